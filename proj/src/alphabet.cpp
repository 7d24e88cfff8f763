#include "pstray/alphabet.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "pstray/error.hpp"

namespace pstray {

namespace {

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)) != 0; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

std::set<std::string> explode_bytes(const std::set<std::string>& tokens) {
  std::set<std::string> out;
  for (const auto& t : tokens)
    for (char c : t) out.insert(std::string(1, c));
  return out;
}

}  // namespace

void AlphabetSpec::validate() const {
  for (const auto& t : pi_members) {
    if (t.empty()) throw Error(ErrorKind::Input, "empty token in pi");
    if (t == kSentinelToken) throw Error(ErrorKind::Input, "sentinel '$' declared in pi");
    if (sigma_members.count(t))
      throw Error(ErrorKind::Input, "token '" + t + "' declared in both pi and sigma");
  }
  for (const auto& t : sigma_members) {
    if (t.empty()) throw Error(ErrorKind::Input, "empty token in sigma");
    if (t == kSentinelToken) throw Error(ErrorKind::Input, "sentinel '$' declared in sigma");
  }
  if (mode == InputMode::Bytes) {
    for (const auto* set : {&pi_members, &sigma_members})
      for (const auto& t : *set)
        if (t.size() != 1) throw Error(ErrorKind::Input, "multi-byte token '" + t + "' in bytes mode");
  }
}

AlphabetSpec parse_alphabet_spec(std::string_view text) {
  AlphabetSpec spec;
  bool have_pi = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const std::string_view body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    const auto colon = body.find(':');
    if (colon == std::string_view::npos)
      throw Error(ErrorKind::Input, "alphabet spec line without ':': " + std::string(body));
    const std::string key{trim(body.substr(0, colon))};
    const std::string_view value = trim(body.substr(colon + 1));
    std::set<std::string> tokens;
    for (auto& t : split_input(value, InputMode::Tokens)) tokens.insert(std::move(t));

    if (key == "pi") {
      spec.pi_members = std::move(tokens);
      have_pi = true;
    } else if (key == "sigma") {
      if (value == "auto") {
        spec.sigma_policy = SigmaPolicy::Complement;
        spec.sigma_members.clear();
      } else {
        spec.sigma_policy = SigmaPolicy::Explicit;
        spec.sigma_members = std::move(tokens);
      }
    } else if (key == "mode") {
      if (value == "bytes") {
        spec.mode = InputMode::Bytes;
      } else if (value == "tokens") {
        spec.mode = InputMode::Tokens;
      } else {
        throw Error(ErrorKind::Input, "unknown mode '" + std::string(value) + "'");
      }
    } else {
      throw Error(ErrorKind::Input, "unknown alphabet spec key '" + key + "'");
    }
  }
  if (!have_pi) throw Error(ErrorKind::Input, "alphabet spec has no 'pi:' line");
  if (spec.mode == InputMode::Bytes) {
    spec.pi_members = explode_bytes(spec.pi_members);
    spec.sigma_members = explode_bytes(spec.sigma_members);
  }
  spec.validate();
  return spec;
}

std::string format_alphabet_spec(const AlphabetSpec& spec) {
  auto join = [](const std::set<std::string>& s) {
    std::string out;
    for (const auto& t : s) {
      if (!out.empty()) out += ' ';
      out += t;
    }
    return out;
  };
  std::string out = "pi: " + join(spec.pi_members) + "\n";
  out += "sigma: " + (spec.sigma_policy == SigmaPolicy::Complement ? std::string("auto")
                                                                   : join(spec.sigma_members));
  out += "\nmode: ";
  out += spec.mode == InputMode::Bytes ? "bytes" : "tokens";
  out += "\n";
  return out;
}

std::vector<std::string> split_input(std::string_view raw, InputMode mode) {
  std::vector<std::string> out;
  if (mode == InputMode::Bytes) {
    out.reserve(raw.size());
    for (char c : raw) out.emplace_back(1, c);
    return out;
  }
  std::size_t i = 0;
  while (i < raw.size()) {
    while (i < raw.size() && is_space(raw[i])) ++i;
    std::size_t j = i;
    while (j < raw.size() && !is_space(raw[j])) ++j;
    if (j > i) out.emplace_back(raw.substr(i, j - i));
    i = j;
  }
  return out;
}

std::string PText::render() const {
  std::string out;
  for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
    if (spec.mode == InputMode::Tokens && i > 0) out += ' ';
    out += tokens[symbols[i]];
  }
  return out;
}

PText ingest(std::string_view raw, const AlphabetSpec& spec) {
  const auto tokens = split_input(raw, spec.mode);
  return ingest_tokens(tokens, spec);
}

PText ingest_tokens(std::span<const std::string> tokens, const AlphabetSpec& spec) {
  spec.validate();
  if (tokens.empty()) throw Error(ErrorKind::Input, "empty input");

  std::set<std::string> params;
  std::set<std::string> statics;
  for (const auto& t : tokens) {
    if (t == kSentinelToken) throw Error(ErrorKind::Input, "input contains the reserved sentinel '$'");
    if (spec.pi_members.count(t)) {
      params.insert(t);
    } else if (spec.sigma_policy == SigmaPolicy::Complement || spec.sigma_members.count(t)) {
      statics.insert(t);
    } else {
      throw Error(ErrorKind::Classification, "token '" + t + "' is in neither alphabet");
    }
  }

  PText text;
  text.spec = spec;
  text.pi_count = static_cast<std::uint32_t>(params.size());
  text.sigma_count = static_cast<std::uint32_t>(statics.size() + 1);
  text.tokens.reserve(text.universe() + 1);
  text.tokens.emplace_back();
  for (const auto* group : {&params, &statics}) {
    for (const auto& t : *group) {
      text.ids.emplace(t, static_cast<Symbol>(text.tokens.size()));
      text.tokens.push_back(t);
    }
  }
  text.tokens.emplace_back(kSentinelToken);

  text.symbols.reserve(tokens.size() + 1);
  for (const auto& t : tokens) text.symbols.push_back(text.ids.at(t));
  text.symbols.push_back(text.sentinel());
  return text;
}

std::uint32_t rank(Symbol x, const PText& text) {
  if (x == 0 || x > text.universe())
    throw Error(ErrorKind::Rank, "symbol id " + std::to_string(x) + " outside 1.." +
                                     std::to_string(text.universe()));
  return x;
}

std::optional<std::vector<Symbol>> encode_pattern(std::span<const std::string> tokens,
                                                  const PText& text) {
  const AlphabetSpec& spec = text.spec;
  std::vector<Symbol> out;
  out.reserve(tokens.size());
  std::unordered_map<std::string, Symbol> renamed;
  bool possible = true;
  for (const auto& t : tokens) {
    if (t == kSentinelToken) {
      out.push_back(text.sentinel());
    } else if (spec.pi_members.count(t)) {
      auto [it, fresh] = renamed.emplace(t, static_cast<Symbol>(renamed.size() + 1));
      if (fresh && it->second > text.pi_count) possible = false;
      out.push_back(it->second);
    } else if (spec.sigma_policy == SigmaPolicy::Complement || spec.sigma_members.count(t)) {
      auto it = text.ids.find(t);
      if (it == text.ids.end()) {
        possible = false;
        out.push_back(0);
      } else {
        out.push_back(it->second);
      }
    } else {
      throw Error(ErrorKind::Classification, "pattern token '" + t + "' is in neither alphabet");
    }
  }
  if (!possible) return std::nullopt;
  return out;
}

}  // namespace pstray
