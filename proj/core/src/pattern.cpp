#include "vincstat/pattern.hpp"

#include <charconv>
#include <sstream>

namespace vincstat {

namespace {

void check_bijection(std::span<const int> values) {
  std::vector<char> seen(values.size() + 1, 0);
  for (int v : values) {
    if (v < 1 || static_cast<std::size_t>(v) > values.size() || seen[v]) {
      throw Error(ErrorKind::NotAPermutation,
                  "entries are not a bijection of {1.." +
                      std::to_string(values.size()) + "}");
    }
    seen[v] = 1;
  }
}

int parse_positive(std::string_view token) {
  if (token.empty()) {
    throw Error(ErrorKind::MalformedToken, "empty entry");
  }
  int value = 0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size() || value < 1 ||
      token.front() == '+' || token.front() == '-') {
    throw Error(ErrorKind::MalformedToken,
                "not a positive integer: '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    if (pos == std::string_view::npos) {
      parts.push_back(text.substr(start));
      return parts;
    }
    parts.push_back(text.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

Permutation::Permutation(std::vector<int> values) : values_(std::move(values)) {
  check_bijection(values_);
}

Permutation Permutation::identity(std::size_t n) {
  std::vector<int> v(n);
  std::iota(v.begin(), v.end(), 1);
  return Permutation(std::move(v));
}

std::vector<int> Permutation::inverse() const {
  std::vector<int> inv(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    inv[values_[i] - 1] = static_cast<int>(i);
  }
  return inv;
}

std::string Permutation::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values_[i]);
  }
  return out;
}

Permutation parse_permutation(std::string_view text) {
  std::vector<int> values;
  if (text.empty()) {
    return Permutation();
  }
  for (auto token : split(text, ',')) {
    values.push_back(parse_positive(token));
  }
  return Permutation(std::move(values));
}

std::vector<int> adjacencies_to_composition(std::span<const int> adjacencies,
                                            int k) {
  std::vector<char> is_adjacent(static_cast<std::size_t>(std::max(k, 0)) + 1, 0);
  for (int a : adjacencies) {
    if (a < 1 || a > k - 1) {
      throw Error(ErrorKind::OutOfRange, "adjacency " + std::to_string(a) +
                                             " outside {1.." +
                                             std::to_string(k - 1) + "}");
    }
    is_adjacent[a] = 1;
  }
  // Block ends are the elements c_1 < ... < c_j = k of [k] \ A.
  std::vector<int> blocks;
  int previous_end = 0;
  for (int c = 1; c <= k; ++c) {
    if (!is_adjacent[c]) {
      blocks.push_back(c - previous_end);
      previous_end = c;
    }
  }
  return blocks;
}

std::vector<int> composition_to_adjacencies(std::span<const int> blocks) {
  std::vector<int> adjacencies;
  int start = 1;
  for (int b : blocks) {
    if (b < 1) {
      throw Error(ErrorKind::NonPositivePart,
                  "composition part " + std::to_string(b) + " is not positive");
    }
    for (int a = start; a < start + b - 1; ++a) adjacencies.push_back(a);
    start += b;
  }
  return adjacencies;
}

VincularPattern::VincularPattern(Permutation order, std::vector<int> blocks)
    : order_(std::move(order)), blocks_(std::move(blocks)) {
  if (order_.size() == 0) {
    throw Error(ErrorKind::EmptyBlock, "pattern must have at least one entry");
  }
  adjacencies_ = composition_to_adjacencies(blocks_);
  const int total = std::accumulate(blocks_.begin(), blocks_.end(), 0);
  if (total != size()) {
    throw Error(ErrorKind::SizeMismatch,
                "block sizes sum to " + std::to_string(total) +
                    " but the pattern has size " + std::to_string(size()));
  }
  offsets_.reserve(blocks_.size());
  int offset = 0;
  for (int b : blocks_) {
    offsets_.push_back(offset);
    offset += b;
  }
}

VincularPattern VincularPattern::from_adjacencies(Permutation order,
                                                  std::span<const int> adjacencies) {
  const int k = static_cast<int>(order.size());
  auto blocks = adjacencies_to_composition(adjacencies, k);
  return VincularPattern(std::move(order), std::move(blocks));
}

VincularPattern parse_pattern(std::string_view text) {
  std::vector<int> values;
  std::vector<int> blocks;
  for (auto block_text : split(text, '|')) {
    if (block_text.empty()) {
      throw Error(ErrorKind::EmptyBlock, "empty block in '" + std::string(text) + "'");
    }
    int size = 0;
    for (auto token : split(block_text, ',')) {
      values.push_back(parse_positive(token));
      ++size;
    }
    blocks.push_back(size);
  }
  return VincularPattern(Permutation(std::move(values)), std::move(blocks));
}

std::string format_pattern(const VincularPattern& pattern) {
  std::ostringstream out;
  const auto values = pattern.order().values();
  std::size_t i = 0;
  for (int b = 0; b < pattern.block_count(); ++b) {
    if (b) out << '|';
    for (int e = 0; e < pattern.blocks()[b]; ++e, ++i) {
      if (e) out << ',';
      out << values[i];
    }
  }
  return out.str();
}

}  // namespace vincstat
