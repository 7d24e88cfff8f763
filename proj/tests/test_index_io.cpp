#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "fixtures.hpp"
#include "pstray/error.hpp"
#include "pstray/index_io.hpp"
#include "pstray/workload.hpp"

using namespace pstray;

namespace {

ErrorKind kind_of_failure(std::string_view bytes) {
  try {
    deserialize(bytes);
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("image was accepted");
  return ErrorKind::Input;
}

void put_u64(std::string& bytes, std::size_t at, std::uint64_t value) {
  for (int k = 0; k < 8; ++k) bytes[at + k] = static_cast<char>((value >> (8 * k)) & 0xff);
}

void reseal(std::string& bytes) {
  put_u64(bytes, bytes.size() - 8, fnv1a64(std::string_view(bytes).substr(0, bytes.size() - 8)));
}

}  // namespace

TEST_CASE("save and load round trip") {
  const PSTrayIndex idx = assemble(test::fig2_text());
  const auto path = std::filesystem::temp_directory_path() / "pstray_roundtrip.idx";
  save(idx, path);
  const PSTrayIndex back = load(path);
  CHECK(serialize(back) == serialize(idx));
  std::ifstream in(path, std::ios::binary);
  const std::string on_disk((std::istreambuf_iterator<char>(in)), {});
  CHECK(on_disk == serialize(idx));
  CHECK(on_disk.substr(0, 8) == kIndexMagic);
  CHECK(back.text.symbols == idx.text.symbols);
  CHECK(back.text.spec == idx.text.spec);
  CHECK(back.sa.psa == idx.sa.psa);
  CHECK(back.ann == idx.ann);
  CHECK(back.sa.has_rmq());
  CHECK(query_raw(back, "xAyy").positions == query_raw(idx, "xAyy").positions);
  std::filesystem::remove(path);
}

TEST_CASE("round trip of random indexes") {
  workload::Rng rng(3);
  for (int trial = 0; trial < 30; ++trial) {
    const std::uint32_t params = trial % 5;
    const std::uint32_t statics = 1 + trial % 3;
    const PSTrayIndex idx = assemble(ingest(workload::random_body(rng, 1 + rng() % 300, params, statics),
                                            workload::letter_spec(params, statics)),
                                     trial % 2 == 0);
    const std::string image = serialize(idx);
    const PSTrayIndex back = deserialize(image);
    REQUIRE(serialize(back) == image);
    CHECK(back.sa.has_rmq() == idx.sa.has_rmq());
    for (int k = 0; k < 5; ++k) {
      const auto pattern = workload::mixed_pattern(idx.text, rng, 12);
      REQUIRE(query(back, pattern).positions == query(idx, pattern).positions);
    }
  }
}

TEST_CASE("token-mode indexes keep their alphabet") {
  AlphabetSpec spec;
  spec.pi_members = {"foo", "bar"};
  spec.sigma_policy = SigmaPolicy::Complement;
  spec.mode = InputMode::Tokens;
  const PSTrayIndex idx = assemble(ingest("foo = bar + foo ;", spec));
  const PSTrayIndex back = deserialize(serialize(idx));
  CHECK(back.text.tokens == idx.text.tokens);
  CHECK(back.text.render() == "foo = bar + foo ;");
  CHECK(query_raw(back, "bar = foo").positions == std::vector<std::uint32_t>{0});
}

TEST_CASE("damaged images are rejected") {
  const std::string image = serialize(assemble(test::fig2_text()));

  CHECK(kind_of_failure(image.substr(0, image.size() / 2)) == ErrorKind::Load);
  CHECK(kind_of_failure(image.substr(0, 4)) == ErrorKind::Version);
  CHECK(kind_of_failure("") == ErrorKind::Version);

  std::string magic = image;
  magic[0] = 'Q';
  CHECK(kind_of_failure(magic) == ErrorKind::Version);

  std::string version = image;
  put_u64(version, 8, 2);
  reseal(version);
  CHECK(kind_of_failure(version) == ErrorKind::Version);

  std::string flipped = image;
  flipped[image.size() / 2] ^= 0x10;
  CHECK(kind_of_failure(flipped) == ErrorKind::Load);

  std::string trailing = image + "x";
  CHECK(kind_of_failure(trailing) == ErrorKind::Load);
}

TEST_CASE("checksummed images with broken invariants are rejected") {
  const PSTrayIndex idx = assemble(test::fig2_text());

  PSTrayIndex swapped = idx;
  std::swap(swapped.sa.psa[0], swapped.sa.psa[1]);
  CHECK(kind_of_failure(serialize(swapped)) == ErrorKind::Load);

  PSTrayIndex flags = idx;
  flags.ann.flags[0] = 0;
  CHECK(kind_of_failure(serialize(flags)) == ErrorKind::Load);

  PSTrayIndex plcp = idx;
  plcp.sa.plcp[3] += 1;
  CHECK(kind_of_failure(serialize(plcp)) == ErrorKind::Load);
}

TEST_CASE("loading a missing file") {
  CHECK_THROWS_AS(load("/nonexistent/pstray.idx"), Error);
}
