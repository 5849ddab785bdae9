// Copyright 2026 The greedymrf Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef GREEDYMRF_DATASET_HPP
#define GREEDYMRF_DATASET_HPP

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <set>
#include <span>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "greedymrf/errors.hpp"

namespace gmrf {

/// Index of a symbol in an Alphabet.
using Value = std::uint8_t;

/// Ordered set of distinct tokens with a token <-> index bijection.
class Alphabet {
 public:
  static constexpr std::size_t kMaxSize = 256;

  Alphabet() = default;

  explicit Alphabet(std::vector<std::string> symbols) : symbols_(std::move(symbols)) {
    if (symbols_.size() < 2) {
      throw ArgumentError("alphabet needs at least 2 symbols, got " +
                          std::to_string(symbols_.size()));
    }
    if (symbols_.size() > kMaxSize) {
      throw CapacityError("alphabet larger than 256 symbols");
    }
    for (std::size_t k = 0; k < symbols_.size(); ++k) {
      if (!index_.emplace(symbols_[k], static_cast<Value>(k)).second) {
        throw ArgumentError("duplicate alphabet symbol '" + symbols_[k] + "'");
      }
    }
  }

  /// Sorted set of distinct tokens.
  static Alphabet infer(const std::set<std::string>& tokens) {
    return Alphabet(std::vector<std::string>(tokens.begin(), tokens.end()));
  }

  /// The two-symbol spin alphabet: index 0 is -1, index 1 is +1.
  static Alphabet spins() { return Alphabet({"-1", "1"}); }

  std::size_t size() const noexcept { return symbols_.size(); }
  const std::string& symbol(Value v) const { return symbols_.at(v); }
  const std::vector<std::string>& symbols() const noexcept { return symbols_; }

  std::optional<Value> index_of(const std::string& token) const {
    auto it = index_.find(token);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  bool operator==(const Alphabet& other) const { return symbols_ == other.symbols_; }

 private:
  std::vector<std::string> symbols_;
  std::unordered_map<std::string, Value> index_;
};

/// n samples of p discrete variables, stored row-major as alphabet indices.
/// Immutable after construction.
class DiscreteDataset {
 public:
  DiscreteDataset(std::vector<std::string> names, Alphabet alphabet, std::size_t n,
                  std::vector<Value> values)
      : names_(std::move(names)),
        alphabet_(std::move(alphabet)),
        n_(n),
        values_(std::move(values)) {
    if (n_ == 0) throw EmptyDatasetError("dataset has no samples");
    if (names_.empty()) throw EmptyDatasetError("dataset has no variables");
    if (values_.size() != n_ * names_.size()) {
      throw ArgumentError("value matrix size does not match n x p");
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
      if (!seen.insert(name).second) {
        throw ArgumentError("duplicate variable name '" + name + "'");
      }
    }
    for (Value v : values_) {
      if (v >= alphabet_.size()) throw DomainError("value outside alphabet");
    }
  }

  std::size_t num_samples() const noexcept { return n_; }
  std::size_t num_vars() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const Alphabet& alphabet() const noexcept { return alphabet_; }

  Value at(std::size_t row, std::size_t var) const { return values_[row * num_vars() + var]; }

  std::span<const Value> row(std::size_t r) const {
    return {values_.data() + r * num_vars(), num_vars()};
  }

  std::span<const Value> values() const noexcept { return values_; }

  bool operator==(const DiscreteDataset& other) const = default;

 private:
  std::vector<std::string> names_;
  Alphabet alphabet_;
  std::size_t n_;
  std::vector<Value> values_;
};

/// x_A: values for a sorted set of distinct variables.
class Assignment {
 public:
  Assignment() = default;

  Assignment(std::vector<std::size_t> vars, std::vector<Value> vals)
      : vars_(std::move(vars)), vals_(std::move(vals)) {
    if (vars_.size() != vals_.size()) {
      throw ArgumentError("assignment vars and vals differ in length");
    }
    for (std::size_t k = 1; k < vars_.size(); ++k) {
      if (vars_[k - 1] >= vars_[k]) {
        throw ArgumentError("assignment vars must be distinct and ascending");
      }
    }
  }

  const std::vector<std::size_t>& vars() const noexcept { return vars_; }
  const std::vector<Value>& vals() const noexcept { return vals_; }
  std::size_t size() const noexcept { return vars_.size(); }

 private:
  std::vector<std::size_t> vars_;
  std::vector<Value> vals_;
};

/// One token rewrite rule, applied before alphabet inference.
struct TokenMapping {
  std::string from;
  std::string to;
};

struct IngestOptions {
  /// First matching rule wins; tokens without a rule pass through.
  std::vector<TokenMapping> mappings;
  /// When set, tokens must belong to it and its order fixes the indices.
  std::optional<std::vector<std::string>> alphabet;
};

namespace detail {

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto comma = line.find(',', start);
    auto field = line.substr(start, comma == std::string_view::npos ? line.npos : comma - start);
    out.emplace_back(trim(field));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

inline const std::string& apply_mapping(const std::vector<TokenMapping>& rules,
                                        const std::string& token) {
  for (const auto& rule : rules) {
    if (rule.from == token) return rule.to;
  }
  return token;
}

/// Raw table of tokens, kept until the alphabet is known.
struct TokenTable {
  std::vector<std::string> names;
  std::vector<std::string> cells;  // row-major
  std::size_t rows = 0;
};

inline TokenTable read_tokens(std::istream& in) {
  TokenTable table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    if (!have_header) {
      table.names = std::move(fields);
      have_header = true;
      continue;
    }
    if (fields.size() != table.names.size()) {
      throw ParseError("row " + std::to_string(line_no) + ": expected " +
                           std::to_string(table.names.size()) + " tokens, got " +
                           std::to_string(fields.size()),
                       line_no);
    }
    for (auto& f : fields) table.cells.push_back(std::move(f));
    ++table.rows;
  }
  if (!have_header) throw EmptyDatasetError("input has no header row");
  if (table.rows == 0) throw EmptyDatasetError("input has no data rows");
  return table;
}

inline DiscreteDataset encode(const TokenTable& table, const IngestOptions& options) {
  std::vector<std::string> mapped;
  mapped.reserve(table.cells.size());
  std::set<std::string> distinct;
  for (const auto& cell : table.cells) {
    mapped.push_back(apply_mapping(options.mappings, cell));
    distinct.insert(mapped.back());
  }
  Alphabet alphabet;
  if (options.alphabet) {
    alphabet = Alphabet(*options.alphabet);
  } else {
    if (distinct.size() < 2) {
      // A constant column set still needs a two-symbol alphabet.
      distinct.insert(distinct.empty() ? "0" : (*distinct.begin() == "0" ? "1" : "0"));
    }
    alphabet = Alphabet::infer(distinct);
  }
  std::vector<Value> values;
  values.reserve(mapped.size());
  const std::size_t p = table.names.size();
  for (std::size_t k = 0; k < mapped.size(); ++k) {
    auto idx = alphabet.index_of(mapped[k]);
    if (!idx) {
      throw DomainError("token '" + mapped[k] + "' (row " + std::to_string(k / p + 2) +
                        ", column '" + table.names[k % p] + "') is not in the alphabet");
    }
    values.push_back(*idx);
  }
  return DiscreteDataset(table.names, std::move(alphabet), table.rows, std::move(values));
}

}  // namespace detail

/// Reads a header-first comma-separated table.
inline DiscreteDataset read_csv(std::istream& in, const IngestOptions& options = {}) {
  return detail::encode(detail::read_tokens(in), options);
}

inline DiscreteDataset load_csv(const std::string& path, const IngestOptions& options = {}) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'", 0);
  return read_csv(in, options);
}

inline void write_csv(std::ostream& out, const DiscreteDataset& ds) {
  const auto& names = ds.names();
  for (std::size_t j = 0; j < names.size(); ++j) out << (j ? "," : "") << names[j];
  out << '\n';
  for (std::size_t r = 0; r < ds.num_samples(); ++r) {
    auto row = ds.row(r);
    for (std::size_t j = 0; j < row.size(); ++j) {
      out << (j ? "," : "") << ds.alphabet().symbol(row[j]);
    }
    out << '\n';
  }
}

/// Parses `from=to` lines; blank lines and lines starting with '#' are skipped.
inline std::vector<TokenMapping> read_mappings(std::istream& in) {
  std::vector<TokenMapping> rules;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto t = detail::trim(line);
    if (t.empty() || t.front() == '#') continue;
    auto eq = t.find('=');
    if (eq == std::string_view::npos) {
      throw ParseError("mapping line " + std::to_string(line_no) + " has no '='", line_no);
    }
    rules.push_back({std::string(detail::trim(t.substr(0, eq))),
                     std::string(detail::trim(t.substr(eq + 1)))});
  }
  return rules;
}

inline TokenMapping parse_mapping(std::string_view rule) {
  auto eq = rule.find('=');
  if (eq == std::string_view::npos) {
    throw ArgumentError("mapping '" + std::string(rule) + "' is not of the form from=to");
  }
  return {std::string(detail::trim(rule.substr(0, eq))),
          std::string(detail::trim(rule.substr(eq + 1)))};
}

/// Re-encodes an existing dataset through token rules (and optional alphabet).
inline DiscreteDataset remap(const DiscreteDataset& ds, const IngestOptions& options) {
  detail::TokenTable table;
  table.names = ds.names();
  table.rows = ds.num_samples();
  table.cells.reserve(ds.values().size());
  for (Value v : ds.values()) table.cells.push_back(ds.alphabet().symbol(v));
  return detail::encode(table, options);
}

/// Keeps the given columns, in the given order.
inline DiscreteDataset select_columns(const DiscreteDataset& ds,
                                      std::span<const std::size_t> columns) {
  if (columns.empty()) throw EmptyDatasetError("no columns selected");
  std::vector<std::string> names;
  for (auto c : columns) {
    if (c >= ds.num_vars()) throw BoundsError("column index out of range");
    names.push_back(ds.names()[c]);
  }
  std::vector<Value> values;
  values.reserve(ds.num_samples() * columns.size());
  for (std::size_t r = 0; r < ds.num_samples(); ++r) {
    for (auto c : columns) values.push_back(ds.at(r, c));
  }
  return DiscreteDataset(std::move(names), ds.alphabet(), ds.num_samples(), std::move(values));
}

/// Keeps the columns whose fraction of non-missing entries is at least
/// `threshold`. Rows are never dropped.
inline DiscreteDataset filter_participation(const DiscreteDataset& raw,
                                            const std::string& missing_symbol,
                                            double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ArgumentError("participation threshold must lie in [0, 1]");
  }
  auto missing = raw.alphabet().index_of(missing_symbol);
  if (!missing) {
    throw DomainError("missing symbol '" + missing_symbol + "' is not in the alphabet");
  }
  const auto n = raw.num_samples();
  std::vector<std::size_t> keep;
  for (std::size_t c = 0; c < raw.num_vars(); ++c) {
    std::size_t present = 0;
    for (std::size_t r = 0; r < n; ++r) present += raw.at(r, c) != *missing;
    // present / n >= threshold, compared without rounding the fraction
    if (static_cast<double>(present) >= threshold * static_cast<double>(n)) keep.push_back(c);
  }
  if (keep.empty()) throw EmptyDatasetError("participation filter removed every column");
  return select_columns(raw, keep);
}

/// Number of rows agreeing with `a` on all of its variables.
inline std::size_t empirical_count(const DiscreteDataset& ds, const Assignment& a) {
  for (auto v : a.vars()) {
    if (v >= ds.num_vars()) throw BoundsError("variable index out of range");
  }
  std::size_t count = 0;
  for (std::size_t r = 0; r < ds.num_samples(); ++r) {
    auto row = ds.row(r);
    bool match = true;
    for (std::size_t k = 0; k < a.size() && match; ++k) match = row[a.vars()[k]] == a.vals()[k];
    count += match;
  }
  return count;
}

/// P^(x_A): fraction of rows matching the assignment. Empty assignment gives 1.
inline double empirical_prob(const DiscreteDataset& ds, const Assignment& a) {
  return static_cast<double>(empirical_count(ds, a)) / static_cast<double>(ds.num_samples());
}

}  // namespace gmrf

#endif  // GREEDYMRF_DATASET_HPP
