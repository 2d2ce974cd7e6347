#include "sparsemaps/forest_code.hpp"

#include <array>
#include <bit>

namespace sparsemaps {

namespace {

struct ByteSummary {
  std::int8_t delta;
  std::int8_t min_prefix;
};

constexpr std::array<ByteSummary, 256> make_byte_table() {
  std::array<ByteSummary, 256> table{};
  for (int b = 0; b < 256; ++b) {
    int h = 0, lo = 8;
    for (int j = 0; j < 8; ++j) {
      h += ((b >> j) & 1) ? 1 : -1;
      if (h < lo) lo = h;
    }
    table[b] = {static_cast<std::int8_t>(h), static_cast<std::int8_t>(lo)};
  }
  return table;
}

constexpr auto byte_table = make_byte_table();

}  // namespace

void StepBits::set_up(std::size_t i, bool value) {
  std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value)
    words_[i >> 6] |= bit;
  else
    words_[i >> 6] &= ~bit;
}

void StepBits::clear_tail() {
  if (length_ % 64 != 0 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (length_ % 64)) - 1;
}

std::size_t StepBits::up_count() const {
  std::size_t total = 0;
  for (auto w : words_) total += static_cast<std::size_t>(std::popcount(w));
  return total;
}

std::int64_t StepBits::height(std::size_t t) const {
  std::size_t ups = 0;
  std::size_t full = t / 64;
  for (std::size_t w = 0; w < full; ++w) ups += static_cast<std::size_t>(std::popcount(words_[w]));
  if (t % 64 != 0) ups += static_cast<std::size_t>(std::popcount(words_[full] & ((std::uint64_t{1} << (t % 64)) - 1)));
  return 2 * static_cast<std::int64_t>(ups) - static_cast<std::int64_t>(t);
}

std::size_t StepBits::first_hit(std::int64_t level, std::size_t from, std::int64_t start_height) const {
  std::int64_t h = start_height;
  if (h == level) return from;
  std::size_t t = from;
  while (t < length_ && t % 8 != 0) {
    h += step(t++);
    if (h == level) return t;
  }
  while (t + 8 <= length_) {
    auto b = static_cast<unsigned>((words_[t >> 6] >> (t & 63)) & 0xffu);
    const ByteSummary& s = byte_table[b];
    if (h + s.min_prefix <= level) break;
    h += s.delta;
    t += 8;
  }
  while (t < length_) {
    h += step(t++);
    if (h == level) return t;
  }
  return length_ + 1;
}

std::size_t StepBits::first_argmin() const {
  std::int64_t h = 0, best = 0;
  std::size_t best_t = 0, t = 0;
  while (t + 8 <= length_) {
    auto b = static_cast<unsigned>((words_[t >> 6] >> (t & 63)) & 0xffu);
    const ByteSummary& s = byte_table[b];
    if (h + s.min_prefix < best) {
      for (int j = 0; j < 8; ++j) {
        h += step(t++);
        if (h < best) {
          best = h;
          best_t = t;
        }
      }
    } else {
      h += s.delta;
      t += 8;
    }
  }
  while (t < length_) {
    h += step(t++);
    if (h < best) {
      best = h;
      best_t = t;
    }
  }
  return best_t;
}

std::uint64_t StepBits::read64(std::size_t pos) const {
  std::size_t w = pos >> 6, o = pos & 63;
  if (w >= words_.size()) return 0;
  std::uint64_t x = words_[w] >> o;
  if (o != 0 && w + 1 < words_.size()) x |= words_[w + 1] << (64 - o);
  return x;
}

StepBits StepBits::rotated(std::size_t offset) const {
  StepBits out(length_);
  if (length_ == 0) return out;
  offset %= length_;
  for (std::size_t w = 0; w < out.words_.size(); ++w) {
    std::size_t p = (offset + 64 * w) % length_;
    std::size_t avail = length_ - p;
    std::uint64_t x = read64(p);
    if (avail < 64) {
      x &= (std::uint64_t{1} << avail) - 1;
      x |= read64(0) << avail;
    }
    out.words_[w] = x;
  }
  out.clear_tail();
  return out;
}

std::string StepBits::to_string() const {
  std::string s(length_, '-');
  for (std::size_t i = 0; i < length_; ++i)
    if (up(i)) s[i] = '+';
  return s;
}

StepBits StepBits::from_string(const std::string& text) {
  StepBits out(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '+')
      out.set_up(i, true);
    else if (text[i] != '-')
      throw ForestCodeError("step string may only contain '+' and '-'");
  }
  return out;
}

ForestCode::ForestCode(StepBits steps, std::uint64_t core_edges, std::uint64_t mark)
    : steps_(std::move(steps)), core_edges_(core_edges), mark_(mark), first_tree_time_(0) {
  const std::size_t len = steps_.size();
  if (len % 2 != 0) throw ForestCodeError("forest code length must be even");
  if (core_edges_ == 0 || core_edges_ > len / 2) throw ForestCodeError("core edge count out of range");
  auto target = -2 * static_cast<std::int64_t>(core_edges_);
  if (steps_.first_hit(target) != len) throw ForestCodeError("path must first reach -2c at its final step");
  first_tree_time_ = steps_.first_hit(-1);
  if (mark_ >= first_tree_time_) throw ForestCodeError("root mark exceeds the first tree");
}

std::vector<std::pair<std::size_t, std::size_t>> ForestCode::tree_ranges() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  out.reserve(tree_count());
  std::size_t begin = 0;
  for (std::uint64_t i = 1; i <= tree_count(); ++i) {
    std::size_t hit = steps_.first_hit(-static_cast<std::int64_t>(i), begin, -static_cast<std::int64_t>(i) + 1);
    out.emplace_back(begin, hit - 1);
    begin = hit;
  }
  return out;
}

StepBits sample_steps(std::size_t length, std::size_t ups_wanted, Rng& rng) {
  if (ups_wanted > length) throw ForestCodeError("more up steps than steps");
  StepBits bits(length);
  for (auto& w : bits.words()) w = rng.next_u64();
  bits.clear_tail();
  // Fair bits are exchangeable; correcting the count by uniformly chosen
  // flips keeps exchangeability, so the result is uniform given its count.
  std::size_t ups = bits.up_count();
  while (ups > ups_wanted) {
    std::size_t i = rng.below(length);
    if (bits.up(i)) {
      bits.set_up(i, false);
      --ups;
    }
  }
  while (ups < ups_wanted) {
    std::size_t i = rng.below(length);
    if (!bits.up(i)) {
      bits.set_up(i, true);
      ++ups;
    }
  }
  return bits;
}

StepBits sample_bridge(std::uint64_t n, std::uint64_t c, Rng& rng) {
  if (c > n) throw ForestCodeError("core edges exceed total edges");
  return sample_steps(2 * n, n - c, rng);
}

ForestCode vervaat_shift(const StepBits& bridge, std::uint64_t c) {
  const std::size_t len = bridge.size();
  std::size_t m = bridge.first_argmin();
  std::size_t shift = m % len;
  return ForestCode(bridge.rotated(shift), c, (len - m) % len);
}

StepBits unshift(const ForestCode& code) { return code.steps().rotated(code.mark()); }

ForestCode sample_forest_code(std::uint64_t n, std::uint64_t c, Rng& rng) {
  return vervaat_shift(sample_bridge(n, c, rng), c);
}

}  // namespace sparsemaps
