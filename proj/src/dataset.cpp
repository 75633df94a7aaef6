#include "rankproj/dataset.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <iterator>
#include <ostream>
#include <set>
#include <sstream>
#include <unordered_set>

#include "rankproj/csv.hpp"
#include "rankproj/error.hpp"

namespace rankproj {

namespace {

class Fnv1a {
 public:
  void add(const void* data, std::size_t size) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash_ ^= p[i];
      hash_ *= 0x100000001b3ULL;
    }
  }
  void add(double v) {
    auto bits = std::bit_cast<std::uint64_t>(v);
    add(&bits, sizeof bits);
  }
  void add(std::string_view s) {
    add(s.data(), s.size());
    unsigned char sep = 0xff;
    add(&sep, 1);
  }
  std::string hex() const {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash_));
    return buf;
  }

 private:
  std::uint64_t hash_ = 0xcbf29ce484222325ULL;
};

double parse_number(const std::string& cell, std::size_t row, std::size_t col) {
  std::string s = csv::trim(cell);
  if (s.empty()) throw ParseError(row, col, "empty numeric cell");
  const char* first = s.data();
  if (*first == '+') ++first;
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(first, s.data() + s.size(), value);
  if (ec != std::errc{} || ptr != s.data() + s.size())
    throw ParseError(row, col, "not a number: '" + s + "'");
  if (!std::isfinite(value)) throw ParseError(row, col, "non-finite value: '" + s + "'");
  return value;
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  if (attributes_.empty()) throw Error(ErrorKind::invalid_input, "schema needs at least one attribute");
  std::set<std::string> seen;
  for (const auto& a : attributes_)
    if (!seen.insert(a.name).second)
      throw Error(ErrorKind::invalid_input, "duplicate attribute name '" + a.name + "'");
}

std::vector<std::string> AttributeSchema::names() const {
  std::vector<std::string> out;
  for (const auto& a : attributes_) out.push_back(a.name);
  return out;
}

Matrix normalize(const Matrix& raw, std::vector<bool>* constant_columns) {
  Matrix out(raw.rows(), raw.cols());
  if (constant_columns) constant_columns->assign(raw.cols(), false);
  for (std::size_t j = 0; j < raw.cols(); ++j) {
    double lo = raw.rows() ? raw(0, j) : 0.0;
    double hi = lo;
    for (std::size_t i = 1; i < raw.rows(); ++i) {
      lo = std::min(lo, raw(i, j));
      hi = std::max(hi, raw(i, j));
    }
    if (!(hi > lo)) {
      if (constant_columns && raw.rows() > 0) (*constant_columns)[j] = true;
      continue;
    }
    const double span = hi - lo;
    for (std::size_t i = 0; i < raw.rows(); ++i)
      out(i, j) = std::clamp((raw(i, j) - lo) / span, 0.0, 1.0);
  }
  return out;
}

Dataset::Dataset(AttributeSchema schema, std::vector<DataItem> items)
    : schema_(std::move(schema)), items_(std::move(items)) {
  const std::size_t m = schema_.size();
  raw_ = Matrix(items_.size(), m);
  std::unordered_set<std::string> ids;
  for (std::size_t i = 0; i < items_.size(); ++i) {
    const auto& item = items_[i];
    if (!ids.insert(item.id).second)
      throw Error(ErrorKind::invalid_input, "duplicate item id '" + item.id + "'");
    if (item.raw_values.size() != m)
      throw Error(ErrorKind::invalid_input,
                  "item '" + item.id + "' has " + std::to_string(item.raw_values.size()) +
                      " values, expected " + std::to_string(m));
    for (std::size_t j = 0; j < m; ++j) {
      if (!std::isfinite(item.raw_values[j]))
        throw Error(ErrorKind::invalid_input, "item '" + item.id + "' has a non-finite value");
      raw_(i, j) = item.raw_values[j];
    }
  }
  normalized_ = normalize(raw_, &constant_columns_);

  Fnv1a h;
  for (const auto& item : items_) h.add(item.id);
  for (double v : normalized_.data()) h.add(v);
  fingerprint_ = h.hex();
}

bool Dataset::has_constant_columns() const {
  return std::find(constant_columns_.begin(), constant_columns_.end(), true) !=
         constant_columns_.end();
}

std::optional<std::size_t> Dataset::find(std::string_view id) const {
  for (std::size_t i = 0; i < items_.size(); ++i)
    if (items_[i].id == id) return i;
  return std::nullopt;
}

std::size_t Dataset::index_of(std::string_view id) const {
  if (auto i = find(id)) return *i;
  throw Error(ErrorKind::not_found, "unknown item id '" + std::string(id) + "'");
}

std::vector<std::string> Dataset::ids() const {
  std::vector<std::string> out;
  out.reserve(items_.size());
  for (const auto& item : items_) out.push_back(item.id);
  return out;
}

LoadResult load_csv_text(std::string_view text, const CsvOptions& options) {
  std::vector<std::size_t> lines;
  auto rows = csv::parse(text, options.delimiter, &lines);
  if (rows.empty()) throw ParseError(1, 1, "empty input");

  std::size_t width = rows.front().size();
  if (width < 2) throw ParseError(lines.front(), 1, "need a label column and at least one attribute");

  std::vector<Attribute> attributes;
  std::size_t first_data = 0;
  if (options.header) {
    for (std::size_t c = 1; c < width; ++c) {
      std::string name = csv::trim(rows.front()[c]);
      if (name.empty()) name = "attr" + std::to_string(c);
      attributes.push_back({std::move(name), Direction::maximize, std::nullopt});
    }
    first_data = 1;
  } else {
    for (std::size_t c = 1; c < width; ++c)
      attributes.push_back({"attr" + std::to_string(c), Direction::maximize, std::nullopt});
  }
  if (first_data >= rows.size()) throw ParseError(lines.front(), 1, "no data rows");

  AttributeSchema schema(std::move(attributes));
  std::vector<DataItem> items;
  std::vector<RenamedLabel> renamed;
  std::unordered_set<std::string> taken;
  for (std::size_t r = first_data; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.size() != width)
      throw ParseError(lines[r], std::min(row.size(), width) + 1,
                       "expected " + std::to_string(width) + " fields, got " +
                           std::to_string(row.size()));
    DataItem item;
    item.label = csv::trim(row[0]);
    for (std::size_t c = 1; c < width; ++c)
      item.raw_values.push_back(parse_number(row[c], lines[r], c + 1));
    items.push_back(std::move(item));
  }
  // Reserve every original label first so a suffixed id never collides with
  // a label that appears later in the file.
  for (const auto& item : items) taken.insert(item.label);
  std::unordered_set<std::string> used;
  for (auto& item : items) {
    if (used.insert(item.label).second) {
      item.id = item.label;
      continue;
    }
    for (int k = 2;; ++k) {
      std::string candidate = item.label + "-" + std::to_string(k);
      if (!taken.contains(candidate) && !used.contains(candidate)) {
        item.id = candidate;
        used.insert(candidate);
        break;
      }
    }
    renamed.push_back({item.label, item.id});
  }
  return {Dataset(std::move(schema), std::move(items)), std::move(renamed)};
}

LoadResult load_csv(std::istream& source, const CsvOptions& options) {
  std::string text{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  return load_csv_text(text, options);
}

void write_normalized_csv(std::ostream& out, const Dataset& dataset, char delimiter) {
  out << "label";
  for (const auto& a : dataset.schema().attributes()) out << delimiter << csv::escape(a.name, delimiter);
  out << '\n';
  for (std::size_t i = 0; i < dataset.item_count(); ++i) {
    out << csv::escape(dataset.items()[i].id, delimiter);
    for (double v : dataset.normalized_row(i)) out << delimiter << csv::format_number(v);
    out << '\n';
  }
}

Matrix attribute_contributions(const Dataset& dataset, std::span<const double> weights) {
  if (weights.size() != dataset.attribute_count())
    throw Error(ErrorKind::invalid_input,
                "weight vector has " + std::to_string(weights.size()) + " entries, expected " +
                    std::to_string(dataset.attribute_count()));
  const auto& norm = dataset.normalized();
  Matrix out(norm.rows(), norm.cols());
  for (std::size_t i = 0; i < norm.rows(); ++i)
    for (std::size_t j = 0; j < norm.cols(); ++j) out(i, j) = weights[j] * norm(i, j);
  return out;
}

std::string fingerprint_of(std::span<const double> values) {
  Fnv1a h;
  for (double v : values) h.add(v);
  return h.hex();
}

}  // namespace rankproj
