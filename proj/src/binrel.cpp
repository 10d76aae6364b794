#include "relkit/binrel.hpp"

#include <cctype>

namespace relkit {

BinRel BinRel::diagonal(std::size_t n) {
  BinRel r(n);
  for (std::size_t a = 0; a < n; ++a) r.insert(static_cast<Element>(a), static_cast<Element>(a));
  return r;
}

BinRel BinRel::full(std::size_t n) {
  BinRel r(n);
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) r.insert(static_cast<Element>(a), static_cast<Element>(b));
  }
  return r;
}

BinRel BinRel::from_pairs(std::size_t n, std::span<const Pair> pairs) {
  BinRel r(n);
  for (auto [a, b] : pairs) {
    if (a >= n || b >= n) {
      throw Error("pair (" + std::to_string(a) + "," + std::to_string(b) +
                  ") outside universe of size " + std::to_string(n));
    }
    r.insert(a, b);
  }
  return r;
}

std::size_t BinRel::count() const noexcept {
  std::size_t c = 0;
  for (std::uint64_t w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::vector<Pair> BinRel::pairs() const {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < n_; ++a) {
    for_each_in_row(static_cast<Element>(a),
                    [&](Element b) { out.emplace_back(static_cast<Element>(a), b); });
  }
  return out;
}

bool BinRel::subset_of(const BinRel& other) const noexcept {
  if (n_ != other.n_) return false;
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] & ~other.bits_[i]) return false;
  }
  return true;
}

bool BinRel::is_reflexive() const noexcept {
  for (std::size_t a = 0; a < n_; ++a) {
    if (!contains(static_cast<Element>(a), static_cast<Element>(a))) return false;
  }
  return true;
}

bool BinRel::is_symmetric() const noexcept {
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = a + 1; b < n_; ++b) {
      if (contains(static_cast<Element>(a), static_cast<Element>(b)) !=
          contains(static_cast<Element>(b), static_cast<Element>(a))) {
        return false;
      }
    }
  }
  return true;
}

bool BinRel::is_transitive() const {
  for (std::size_t a = 0; a < n_; ++a) {
    const std::uint64_t* ra = bits_.data() + a * words_;
    bool ok = true;
    for_each_in_row(static_cast<Element>(a), [&](Element b) {
      const std::uint64_t* rb = bits_.data() + b * words_;
      for (std::size_t w = 0; w < words_; ++w) {
        if (rb[w] & ~ra[w]) ok = false;
      }
    });
    if (!ok) return false;
  }
  return true;
}

BinRel& BinRel::operator&=(const BinRel& other) {
  if (n_ != other.n_) throw Error("relation size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] &= other.bits_[i];
  return *this;
}

BinRel& BinRel::operator|=(const BinRel& other) {
  if (n_ != other.n_) throw Error("relation size mismatch");
  for (std::size_t i = 0; i < bits_.size(); ++i) bits_[i] |= other.bits_[i];
  return *this;
}

std::size_t BinRel::hash() const noexcept {
  std::uint64_t h = 1469598103934665603ull ^ n_;
  for (std::uint64_t w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string BinRel::to_string() const {
  std::string out = "[";
  bool first = true;
  for (auto [a, b] : pairs()) {
    if (!first) out += ',';
    first = false;
    out += '(' + std::to_string(a) + ',' + std::to_string(b) + ')';
  }
  out += ']';
  return out;
}

bool canonical_less(const BinRel& a, const BinRel& b) noexcept {
  if (a.universe() != b.universe()) return a.universe() < b.universe();
  const std::size_t ca = a.count();
  const std::size_t cb = b.count();
  if (ca != cb) return ca < cb;
  // With equal counts the first differing position (row-major) decides: the
  // relation holding that pair has the lexicographically smaller pair list.
  for (std::size_t r = 0; r < a.universe(); ++r) {
    auto ra = a.row(static_cast<Element>(r));
    auto rb = b.row(static_cast<Element>(r));
    for (std::size_t w = 0; w < ra.size(); ++w) {
      std::uint64_t diff = ra[w] ^ rb[w];
      if (diff) {
        std::uint64_t low = diff & (~diff + 1);
        return (ra[w] & low) != 0;
      }
    }
  }
  return false;
}

BinRel parse_pair_list(std::size_t n, std::string_view text) {
  std::vector<Pair> pairs;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto expect = [&](char c) {
    skip();
    if (i >= text.size() || text[i] != c) {
      throw Error(std::string("pair list: expected '") + c + "' at column " +
                  std::to_string(i + 1));
    }
    ++i;
  };
  auto number = [&]() -> Element {
    skip();
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i) throw Error("pair list: expected number at column " + std::to_string(i + 1));
    return static_cast<Element>(std::stoul(std::string(text.substr(start, i - start))));
  };
  expect('[');
  skip();
  if (i < text.size() && text[i] == ']') {
    ++i;
  } else {
    while (true) {
      expect('(');
      Element a = number();
      expect(',');
      Element b = number();
      expect(')');
      pairs.emplace_back(a, b);
      skip();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      expect(']');
      break;
    }
  }
  skip();
  if (i != text.size()) throw Error("pair list: trailing input");
  return BinRel::from_pairs(n, pairs);
}

}  // namespace relkit
