#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rankproj/matrix.hpp"

namespace rankproj {

/// Only "larger is better" attributes are supported. Attributes where smaller
/// values are preferable must be negated before ingestion.
enum class Direction { maximize };

struct Attribute {
  std::string name;
  Direction direction = Direction::maximize;
  std::optional<std::string> display_unit;
};

class AttributeSchema {
 public:
  /// Throws if empty or if names repeat.
  explicit AttributeSchema(std::vector<Attribute> attributes);

  std::size_t size() const noexcept { return attributes_.size(); }
  const Attribute& operator[](std::size_t j) const { return attributes_[j]; }
  const std::vector<Attribute>& attributes() const noexcept { return attributes_; }
  std::vector<std::string> names() const;

 private:
  std::vector<Attribute> attributes_;
};

struct DataItem {
  std::string id;
  std::string label;
  std::vector<double> raw_values;
};

/// Min-max normalizes each column to [0, 1]. Constant columns map to zeros
/// and are reported through `constant_columns` when provided.
Matrix normalize(const Matrix& raw, std::vector<bool>* constant_columns = nullptr);

/// Immutable multi-attribute dataset with its normalized matrix.
class Dataset {
 public:
  /// Validates finiteness, row lengths and id uniqueness, then normalizes.
  Dataset(AttributeSchema schema, std::vector<DataItem> items);

  const AttributeSchema& schema() const noexcept { return schema_; }
  const std::vector<DataItem>& items() const noexcept { return items_; }
  std::size_t item_count() const noexcept { return items_.size(); }
  std::size_t attribute_count() const noexcept { return schema_.size(); }

  const Matrix& raw() const noexcept { return raw_; }
  const Matrix& normalized() const noexcept { return normalized_; }
  std::span<const double> normalized_row(std::size_t i) const { return normalized_.row(i); }

  /// Columns whose raw values are all equal; they normalize to zero.
  const std::vector<bool>& constant_columns() const noexcept { return constant_columns_; }
  bool has_constant_columns() const;

  /// Index of the item with `id`; throws ErrorKind::not_found.
  std::size_t index_of(std::string_view id) const;
  std::optional<std::size_t> find(std::string_view id) const;
  std::vector<std::string> ids() const;

  /// Stable hash of ids and normalized values, used to detect mixing
  /// artifacts computed on different datasets.
  const std::string& fingerprint() const noexcept { return fingerprint_; }

 private:
  AttributeSchema schema_;
  std::vector<DataItem> items_;
  Matrix raw_;
  Matrix normalized_;
  std::vector<bool> constant_columns_;
  std::string fingerprint_;
};

struct CsvOptions {
  char delimiter = ',';
  bool header = true;
};

/// A label that had to be renamed to keep item ids unique.
struct RenamedLabel {
  std::string label;
  std::string id;
};

struct LoadResult {
  Dataset dataset;
  std::vector<RenamedLabel> renamed;
};

/// Reads a labelled numeric table: first column is the item label, the
/// remaining columns are attributes. Repeated labels get "-2", "-3", ...
/// suffixes in order of appearance.
LoadResult load_csv(std::istream& source, const CsvOptions& options = {});
LoadResult load_csv_text(std::string_view text, const CsvOptions& options = {});

/// Writes label + normalized values, same column order as the input.
void write_normalized_csv(std::ostream& out, const Dataset& dataset, char delimiter = ',');

/// contribution(i, j) = weights[j] * normalized(i, j). Row sums are rank scores.
Matrix attribute_contributions(const Dataset& dataset, std::span<const double> weights);

/// FNV-1a over the bit patterns of `values`, as 16 hex digits.
std::string fingerprint_of(std::span<const double> values);

}  // namespace rankproj
