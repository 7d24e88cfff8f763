#include "pstray/encoding.hpp"

#include <algorithm>

namespace pstray {

PrevSeq prev_encode(std::span<const Symbol> w, Symbol num_params) {
  PrevSeq out;
  out.reserve(w.size());
  // last[x] holds 1 + the last position of x, 0 when unseen
  std::vector<std::size_t> last(static_cast<std::size_t>(num_params) + 1, 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    const Symbol c = w[i];
    if (c >= 1 && c <= num_params) {
      out.push_back(PrevSymbol::distance(last[c] == 0 ? 0 : i + 1 - last[c]));
      last[c] = i + 1;
    } else {
      out.push_back(PrevSymbol::fixed(c));
    }
  }
  return out;
}

std::vector<Symbol> spe(std::span<const Symbol> w, Symbol num_params) {
  std::vector<Symbol> out;
  out.reserve(w.size());
  std::vector<Symbol> renamed(static_cast<std::size_t>(num_params) + 1, 0);
  Symbol next = 0;
  for (Symbol c : w) {
    if (c >= 1 && c <= num_params) {
      if (renamed[c] == 0) renamed[c] = ++next;
      out.push_back(renamed[c]);
    } else {
      out.push_back(c);
    }
  }
  return out;
}

bool p_match(std::span<const Symbol> x, std::span<const Symbol> y, Symbol num_params) {
  if (x.size() != y.size()) return false;
  return prev_encode(x, num_params) == prev_encode(y, num_params);
}

std::string to_string(std::span<const PrevSymbol> seq, const PText& text) {
  std::string out;
  for (const auto& s : seq) {
    if (!out.empty()) out += ' ';
    if (s.is_distance()) {
      out += std::to_string(s.dist());
    } else if (s.static_id() < text.tokens.size()) {
      out += text.tokens[s.static_id()];
    } else {
      out += "#" + std::to_string(s.static_id());
    }
  }
  return out;
}

FposSweep::FposSweep(const PText& text)
    : text_(&text), pos_(text.size()), first_(text.pi_count, kAbsent) {}

bool FposSweep::step() {
  if (pos_ == 0) return false;
  --pos_;
  const Symbol c = text_->symbols[pos_];
  if (text_->is_parameterized(c)) first_[c - 1] = static_cast<std::uint32_t>(pos_);
  return true;
}

FArray FposSweep::materialize() const {
  FArray out(first_.size());
  for (Symbol x = 1; x <= first_.size(); ++x) out[x - 1] = at(x);
  return out;
}

std::vector<Symbol> PFunction::apply(std::span<const Symbol> w) const {
  std::vector<Symbol> out;
  out.reserve(w.size());
  for (Symbol c : w) out.push_back((*this)(c));
  return out;
}

PFunction pfunction_from_fpos(const PText& text, std::size_t /*i*/, std::size_t limit,
                              const FArray& farr) {
  std::vector<std::pair<std::uint32_t, Symbol>> order;
  for (Symbol x = 1; x <= text.pi_count; ++x) {
    const std::uint32_t f = farr[x - 1];
    if (f != kAbsent && f <= limit) order.emplace_back(f, x);
  }
  std::sort(order.begin(), order.end());
  PFunction fn;
  fn.map.assign(static_cast<std::size_t>(text.pi_count) + 1, 0);
  Symbol next = 0;
  for (const auto& [f, x] : order) fn.map[x] = ++next;
  return fn;
}

}  // namespace pstray
