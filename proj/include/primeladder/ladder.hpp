#pragma once

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <istream>
#include <ostream>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "primeladder/error.hpp"
#include "primeladder/numtheory.hpp"

namespace primeladder {

using Label = std::int64_t;

/// Vertex u_{row,column} of the ladder. Rows are 1 or 2, columns 1..n.
struct Position {
  int row = 1;
  std::int64_t column = 1;

  friend bool operator==(const Position&, const Position&) = default;
};

/// A bijective assignment of {1, ..., 2n} to the vertices of P_2 x P_n.
/// u_{i,j} is adjacent to u_{i,j-1}, u_{i,j+1} and u_{3-i,j}.
///
/// The bijection is checked on construction; a Labeling value is always
/// well formed, so a non-prime labeling and a malformed grid never share
/// an error path.
class Labeling {
 public:
  /// Throws malformed-labeling if the rows differ in length, are empty, or
  /// do not hold each of 1..2n exactly once.
  Labeling(std::vector<Label> top, std::vector<Label> bottom) {
    if (top.empty() || top.size() != bottom.size()) {
      throw Error(ErrorKind::malformed_labeling,
                  "rows must be nonempty and of equal length (got " + std::to_string(top.size()) +
                      " and " + std::to_string(bottom.size()) + ")");
    }
    n_ = static_cast<std::int64_t>(top.size());
    cells_ = std::move(top);
    cells_.insert(cells_.end(), bottom.begin(), bottom.end());
    where_.assign(static_cast<std::size_t>(2 * n_ + 1), -1);
    for (std::size_t idx = 0; idx < cells_.size(); ++idx) {
      const Label l = cells_[idx];
      if (l < 1 || l > 2 * n_) {
        throw Error(ErrorKind::malformed_labeling,
                    "label " + std::to_string(l) + " outside 1.." + std::to_string(2 * n_));
      }
      if (where_[static_cast<std::size_t>(l)] != -1) {
        throw Error(ErrorKind::malformed_labeling, "label " + std::to_string(l) + " repeated");
      }
      where_[static_cast<std::size_t>(l)] = static_cast<std::int64_t>(idx);
    }
  }

  std::int64_t columns() const noexcept { return n_; }
  std::int64_t order() const noexcept { return 2 * n_; }

  Label at(int row, std::int64_t column) const { return cells_[index_of(row, column)]; }
  Label at(Position pos) const { return at(pos.row, pos.column); }

  std::vector<Label> row(int r) const {
    const auto v = row_view(r);
    return {v.begin(), v.end()};
  }

  std::span<const Label> row_view(int r) const {
    return std::span<const Label>(cells_).subspan(r == 1 ? 0 : static_cast<std::size_t>(n_),
                                                  static_cast<std::size_t>(n_));
  }

  /// Throws invalid-label when l is outside 1..2n.
  Position position_of(Label l) const {
    check_label(l);
    const std::int64_t idx = where_[static_cast<std::size_t>(l)];
    return {idx < n_ ? 1 : 2, idx % n_ + 1};
  }

  /// Exchanges the cells holding a and b.
  void swap_in_place(Label a, Label b) {
    check_label(a);
    check_label(b);
    auto& ia = where_[static_cast<std::size_t>(a)];
    auto& ib = where_[static_cast<std::size_t>(b)];
    std::swap(cells_[static_cast<std::size_t>(ia)], cells_[static_cast<std::size_t>(ib)]);
    std::swap(ia, ib);
  }

  /// Neighbouring positions in (column, row) order.
  std::vector<Position> neighbours(Position p) const {
    std::vector<Position> out;
    out.reserve(3);
    if (p.column > 1) out.push_back({p.row, p.column - 1});
    if (p.row == 2) out.push_back({1, p.column});
    if (p.row == 1) out.push_back({2, p.column});
    if (p.column < n_) out.push_back({p.row, p.column + 1});
    return out;
  }

  friend bool operator==(const Labeling& a, const Labeling& b) { return a.cells_ == b.cells_; }

 private:
  std::size_t index_of(int row, std::int64_t column) const {
    if ((row != 1 && row != 2) || column < 1 || column > n_) {
      throw Error(ErrorKind::invalid_argument, "position (" + std::to_string(row) + ", " +
                                                   std::to_string(column) + ") outside ladder");
    }
    return static_cast<std::size_t>((row - 1) * n_ + column - 1);
  }

  void check_label(Label l) const {
    if (l < 1 || l > 2 * n_) {
      throw Error(ErrorKind::invalid_label,
                  "label " + std::to_string(l) + " outside 1.." + std::to_string(2 * n_));
    }
  }

  std::int64_t n_ = 0;
  std::vector<Label> cells_;        // row-major, row 1 first
  std::vector<std::int64_t> where_;  // label -> index into cells_
};

/// An edge whose endpoint labels share a factor.
struct Violation {
  Position position_a;
  Position position_b;
  Label label_a = 0;
  Label label_b = 0;
  std::int64_t common_divisor = 1;

  friend bool operator==(const Violation&, const Violation&) = default;
};

/// All non-coprime edges, each once, ordered by (column, row) of the first
/// endpoint. Empty iff the labeling is prime.
inline std::vector<Violation> verify_labeling(const Labeling& l) {
  std::vector<Violation> out;
  const auto top = l.row_view(1);
  const auto bottom = l.row_view(2);
  const auto check = [&](Position a, Label la, Position b, Label lb) {
    const std::int64_t d = gcd(la, lb);
    if (d > 1) out.push_back({a, b, la, lb, d});
  };
  const std::size_t n = top.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto j = static_cast<std::int64_t>(i + 1);
    check({1, j}, top[i], {2, j}, bottom[i]);
    if (i + 1 < n) {
      check({1, j}, top[i], {1, j + 1}, top[i + 1]);
      check({2, j}, bottom[i], {2, j + 1}, bottom[i + 1]);
    }
  }
  return out;
}

inline bool is_prime_labeling(const Labeling& l) {
  const auto top = l.row_view(1);
  const auto bottom = l.row_view(2);
  for (std::size_t i = 0; i < top.size(); ++i) {
    if (gcd(top[i], bottom[i]) != 1) return false;
    if (i + 1 < top.size() && (gcd(top[i], top[i + 1]) != 1 || gcd(bottom[i], bottom[i + 1]) != 1)) {
      return false;
    }
  }
  return true;
}

/// N(l): the labels on vertices adjacent to l, ascending.
inline std::vector<Label> neighbor_labels(const Labeling& l, Label label) {
  std::vector<Label> out;
  for (const Position p : l.neighbours(l.position_of(label))) out.push_back(l.at(p));
  std::sort(out.begin(), out.end());
  return out;
}

inline Labeling swap_labels(Labeling l, Label a, Label b) {
  l.swap_in_place(a, b);
  return l;
}

inline Position position_of(const Labeling& l, Label label) { return l.position_of(label); }

// --- CSV file format: two lines, row 1 then row 2, comma-separated, no header.

inline std::string to_csv(const Labeling& l) {
  std::string out;
  for (int r = 1; r <= 2; ++r) {
    for (std::int64_t j = 1; j <= l.columns(); ++j) {
      if (j > 1) out += ',';
      out += std::to_string(l.at(r, j));
    }
    out += '\n';
  }
  return out;
}

/// Parses the CSV format. Syntax problems raise ParseError with the 1-based
/// line and character column; a grid that parses but is not a bijection
/// raises malformed-labeling.
inline Labeling parse_csv(std::string_view text) {
  std::vector<std::vector<Label>> rows;
  int line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) {
      // Only a trailing newline may leave an empty line.
      if (start >= text.size()) break;
      throw ParseError(line_no, 1, "empty line");
    }
    if (rows.size() == 2) throw ParseError(line_no, 1, "expected exactly two lines");
    std::vector<Label> values;
    std::size_t pos = 0;
    while (true) {
      std::size_t comma = line.find(',', pos);
      if (comma == std::string_view::npos) comma = line.size();
      const std::string_view tok = line.substr(pos, comma - pos);
      Label v = 0;
      const auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
      if (tok.empty() || ec != std::errc() || ptr != tok.data() + tok.size()) {
        throw ParseError(line_no, static_cast<int>(pos) + 1,
                         "expected a decimal integer, got '" + std::string(tok) + "'");
      }
      values.push_back(v);
      if (comma == line.size()) break;
      pos = comma + 1;
    }
    rows.push_back(std::move(values));
  }
  if (rows.size() != 2) {
    throw ParseError(line_no + 1, 1,
                     "expected exactly two lines, got " + std::to_string(rows.size()));
  }
  if (rows[0].size() != rows[1].size()) {
    throw ParseError(2, 1,
                     "row lengths differ (" + std::to_string(rows[0].size()) + " vs " +
                         std::to_string(rows[1].size()) + ")");
  }
  return Labeling(std::move(rows[0]), std::move(rows[1]));
}

inline Labeling read_csv(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_csv(buf.str());
}

/// Fixed-width table with pipe separators, one cell per label.
inline std::string to_ascii_grid(const Labeling& l) {
  const std::size_t width = std::to_string(l.order()).size();
  std::string rule = "+";
  for (std::int64_t j = 0; j < l.columns(); ++j) rule += std::string(width + 2, '-') + "+";
  rule += '\n';
  std::string out = rule;
  for (int r = 1; r <= 2; ++r) {
    out += '|';
    for (std::int64_t j = 1; j <= l.columns(); ++j) {
      const std::string v = std::to_string(l.at(r, j));
      out += ' ' + std::string(width - v.size(), ' ') + v + " |";
    }
    out += '\n';
    out += rule;
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const Position& p) {
  return os << '(' << p.row << ',' << p.column << ')';
}

inline std::ostream& operator<<(std::ostream& os, const Violation& v) {
  return os << v.position_a << '-' << v.position_b << " labels " << v.label_a << ',' << v.label_b
            << " share " << v.common_divisor;
}

}  // namespace primeladder
