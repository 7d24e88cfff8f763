#include "pstray/index_io.hpp"

#include <fstream>
#include <iterator>
#include <limits>

#include "pstray/error.hpp"

namespace pstray {

namespace {

enum SectionTag : std::uint64_t {
  kAlphabet = 1,
  kText = 2,
  kPsa = 3,
  kPlcp = 4,
  kTree = 5,
  kTray = 6,
};

constexpr std::uint64_t kFlagRmq = 1;
constexpr std::uint64_t kWide = std::numeric_limits<std::uint64_t>::max();

class Writer {
 public:
  void u64(std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out_.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
  }
  // u32 sentinels (kAbsent, kNilNode) are widened to all-ones
  void u32(std::uint32_t v) { u64(v == std::numeric_limits<std::uint32_t>::max() ? kWide : v); }
  void bytes(std::string_view s) {
    u64(s.size());
    out_.append(s);
    out_.append((8 - s.size() % 8) % 8, '\0');
  }
  template <typename T>
  void array(const std::vector<T>& values) {
    u64(values.size());
    for (const auto& v : values) u32(static_cast<std::uint32_t>(v));
  }

  std::string& str() noexcept { return out_; }

  // Wraps everything written by fn into a tagged, length-prefixed section.
  template <typename Fn>
  void section(SectionTag tag, Fn&& fn) {
    u64(tag);
    const std::size_t at = out_.size();
    u64(0);
    fn();
    const std::uint64_t len = out_.size() - at - 8;
    for (int b = 0; b < 8; ++b) out_[at + b] = static_cast<char>((len >> (8 * b)) & 0xff);
  }

 private:
  std::string out_;
};

class Reader {
 public:
  Reader(std::string_view data, std::string section) : data_(data), section_(std::move(section)) {}

  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int b = 0; b < 8; ++b) v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + b])) << (8 * b);
    pos_ += 8;
    return v;
  }
  std::uint32_t u32() {
    const std::uint64_t v = u64();
    if (v == kWide) return std::numeric_limits<std::uint32_t>::max();
    if (v >= std::numeric_limits<std::uint32_t>::max()) fail("value " + std::to_string(v) + " out of range");
    return static_cast<std::uint32_t>(v);
  }
  std::string bytes() {
    const std::uint64_t len = u64();
    need(len);
    std::string s(data_.substr(pos_, len));
    pos_ += len + (8 - len % 8) % 8;
    if (pos_ > data_.size()) fail("padding runs past the section");
    return s;
  }
  template <typename T>
  std::vector<T> array() {
    const std::uint64_t count = u64();
    if (count > remaining() / 8) fail("declared length " + std::to_string(count) + " exceeds section size");
    std::vector<T> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(static_cast<T>(u32()));
    return out;
  }
  std::vector<PrevSymbol> codes() {
    const std::uint64_t count = u64();
    if (count > remaining() / 8) fail("declared length exceeds section size");
    std::vector<PrevSymbol> out;
    out.reserve(count);
    for (std::uint64_t i = 0; i < count; ++i) out.push_back(PrevSymbol::from_code(u64()));
    return out;
  }

  std::size_t remaining() const noexcept { return data_.size() - pos_; }
  void expect_end() const {
    if (pos_ != data_.size()) fail(std::to_string(remaining()) + " trailing bytes");
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw Error(ErrorKind::Load, section_ + " section: " + what);
  }

  // Next tagged section as its own reader.
  Reader section(SectionTag expected, const char* name) {
    const std::uint64_t tag = u64();
    if (tag != expected) fail(std::string("expected ") + name + " section, found tag " + std::to_string(tag));
    const std::uint64_t len = u64();
    need(len);
    Reader sub(data_.substr(pos_, len), name);
    pos_ += len;
    return sub;
  }

 private:
  void need(std::uint64_t k) const {
    if (k > remaining()) fail("truncated (need " + std::to_string(k) + " bytes, have " + std::to_string(remaining()) + ")");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
  std::string section_;
};

void write_token_set(Writer& w, const std::set<std::string>& s) {
  w.u64(s.size());
  for (const auto& t : s) w.bytes(t);
}

std::set<std::string> read_token_set(Reader& r) {
  const std::uint64_t count = r.u64();
  if (count > r.remaining() / 8) r.fail("token set length exceeds section size");
  std::set<std::string> s;
  for (std::uint64_t i = 0; i < count; ++i) s.insert(r.bytes());
  return s;
}

}  // namespace

std::uint64_t fnv1a64(std::string_view bytes) noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char c : bytes) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string serialize(const PSTrayIndex& index) {
  const PText& text = index.text;
  const TrayTree& tree = index.tree;
  const TrayAnnotations& ann = index.ann;
  Writer w;
  w.str().append(kIndexMagic);
  w.u64(kIndexVersion);
  w.u64(text.size());
  w.u64(text.pi_count);
  w.u64(text.sigma_count);
  w.u64(index.sa.has_rmq() ? kFlagRmq : 0);

  w.section(kAlphabet, [&] {
    w.u64(static_cast<std::uint64_t>(text.spec.mode));
    w.u64(static_cast<std::uint64_t>(text.spec.sigma_policy));
    write_token_set(w, text.spec.pi_members);
    write_token_set(w, text.spec.sigma_members);
    w.u64(text.tokens.size());
    for (const auto& t : text.tokens) w.bytes(t);
  });
  w.section(kText, [&] { w.array(text.symbols); });
  w.section(kPsa, [&] { w.array(index.sa.psa); });
  w.section(kPlcp, [&] { w.array(index.sa.plcp); });
  w.section(kTree, [&] {
    w.u64(tree.size());
    for (const TreeNode& v : tree.nodes) {
      for (std::uint32_t field : {v.parent, v.edge_start, v.depth_begin, v.depth, v.lb, v.rb, v.child_begin,
                                  v.child_count, v.leaf_pos})
        w.u32(field);
    }
    w.array(tree.children);
    w.u64(tree.child_keys.size());
    for (const auto& k : tree.child_keys) w.u64(k.code());
  });
  w.section(kTray, [&] {
    w.u64(ann.threshold);
    w.u64(ann.parray_width);
    w.u64(ann.pi);
    w.u64(tree.size());
    for (NodeId v = 0; v < tree.size(); ++v) {
      w.u64(ann.flags[v]);
      w.u32(ann.heavy_child[v]);
      w.u32(ann.rep_pos[v]);
      w.u32(ann.farr_offset[v]);
      w.u32(ann.parray_offset[v]);
    }
    w.array(ann.farr_pool);
    w.array(ann.parray_pool);
  });
  w.u64(fnv1a64(w.str()));
  return std::move(w.str());
}

PSTrayIndex deserialize(std::string_view bytes) {
  if (bytes.size() < kIndexMagic.size() || bytes.substr(0, kIndexMagic.size()) != kIndexMagic)
    throw Error(ErrorKind::Version, "not a PSTRAY01 index (bad magic)");
  if (bytes.size() < kIndexMagic.size() + 8 * 6 + 8) throw Error(ErrorKind::Load, "file truncated (header)");
  const std::string_view body = bytes.substr(0, bytes.size() - 8);
  Reader trailer(bytes.substr(bytes.size() - 8), "checksum");
  if (trailer.u64() != fnv1a64(body)) throw Error(ErrorKind::Load, "checksum mismatch (corrupt or truncated file)");

  Reader r(body.substr(kIndexMagic.size()), "header");
  const std::uint64_t version = r.u64();
  if (version != kIndexVersion)
    throw Error(ErrorKind::Version, "unsupported format version " + std::to_string(version));
  const std::uint64_t n = r.u64();
  const std::uint64_t pi = r.u64();
  const std::uint64_t sigma = r.u64();
  const std::uint64_t flags = r.u64();

  PSTrayIndex index;
  PText& text = index.text;
  {
    Reader s = r.section(kAlphabet, "alphabet");
    const std::uint64_t mode = s.u64();
    const std::uint64_t policy = s.u64();
    if (mode > 1 || policy > 1) s.fail("unknown mode or sigma policy");
    text.spec.mode = static_cast<InputMode>(mode);
    text.spec.sigma_policy = static_cast<SigmaPolicy>(policy);
    text.spec.pi_members = read_token_set(s);
    text.spec.sigma_members = read_token_set(s);
    const std::uint64_t count = s.u64();
    if (count != pi + sigma + 1) s.fail("token table size does not match pi + sigma");
    for (std::uint64_t i = 0; i < count; ++i) text.tokens.push_back(s.bytes());
    s.expect_end();
    try {
      text.spec.validate();
    } catch (const Error& e) {
      s.fail(e.what());
    }
  }
  text.pi_count = static_cast<std::uint32_t>(pi);
  text.sigma_count = static_cast<std::uint32_t>(sigma);
  for (Symbol id = 1; id < text.tokens.size(); ++id) {
    if (id == text.sentinel()) continue;
    if (!text.ids.emplace(text.tokens[id], id).second) throw Error(ErrorKind::Load, "alphabet section: duplicate token");
  }
  {
    Reader s = r.section(kText, "text");
    text.symbols = s.array<Symbol>();
    s.expect_end();
    if (text.symbols.size() != n) s.fail("length does not match header n");
  }
  {
    Reader s = r.section(kPsa, "psa");
    index.sa.psa = s.array<std::uint32_t>();
    s.expect_end();
    if (index.sa.psa.size() != n) s.fail("length does not match header n");
  }
  {
    Reader s = r.section(kPlcp, "plcp");
    index.sa.plcp = s.array<std::uint32_t>();
    s.expect_end();
    if (index.sa.plcp.size() != n) s.fail("length does not match header n");
  }
  {
    Reader s = r.section(kTree, "tree");
    const std::uint64_t count = s.u64();
    if (count > s.remaining() / (9 * 8)) s.fail("node count exceeds section size");
    index.tree.nodes.resize(count);
    for (auto& v : index.tree.nodes) {
      for (std::uint32_t* field : {&v.parent, &v.edge_start, &v.depth_begin, &v.depth, &v.lb, &v.rb,
                                   &v.child_begin, &v.child_count, &v.leaf_pos})
        *field = s.u32();
    }
    index.tree.children = s.array<NodeId>();
    index.tree.child_keys = s.codes();
    s.expect_end();
  }
  {
    Reader s = r.section(kTray, "tray");
    TrayAnnotations& ann = index.ann;
    ann.threshold = s.u32();
    ann.parray_width = s.u32();
    ann.pi = s.u32();
    const std::uint64_t count = s.u64();
    if (count != index.tree.size()) s.fail("node count differs from tree section");
    for (std::uint64_t v = 0; v < count; ++v) {
      const std::uint64_t f = s.u64();
      if (f > 3) s.fail("bad node flags");
      ann.flags.push_back(static_cast<std::uint8_t>(f));
      ann.heavy_child.push_back(s.u32());
      ann.rep_pos.push_back(s.u32());
      ann.farr_offset.push_back(s.u32());
      ann.parray_offset.push_back(s.u32());
    }
    ann.farr_pool = s.array<std::uint32_t>();
    ann.parray_pool = s.array<NodeId>();
    s.expect_end();
  }
  r.expect_end();

  index.text_prev = prev_encode(text.symbols, text.pi_count);
  if ((flags & kFlagRmq) != 0) index.sa.rmq.emplace(index.sa.plcp);
  if (auto problem = check_index(index)) throw Error(ErrorKind::Load, "invariant violation: " + *problem);
  return index;
}

void save(const PSTrayIndex& index, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::Input, "cannot open '" + path.string() + "' for writing");
  const std::string bytes = serialize(index);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::Input, "write to '" + path.string() + "' failed");
}

PSTrayIndex load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Load, "cannot open '" + path.string() + "'");
  const std::string bytes{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  return deserialize(bytes);
}

}  // namespace pstray
