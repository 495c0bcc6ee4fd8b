#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "betahull/manifold.hpp"

namespace betahull {

struct ExplicitInput {
  DenseMatrix<Rational> gram;
  std::vector<Vector<Rational>> classes;
  friend bool operator==(const ExplicitInput&, const ExplicitInput&) = default;
};

struct ZonotopeInput {
  DenseMatrix<Rational> gram;
  std::vector<Vector<Rational>> base;
  friend bool operator==(const ZonotopeInput&, const ZonotopeInput&) = default;
};

struct ManifoldInput {
  std::vector<BuildingBlock> sum;
  std::optional<AmbientExtension> ambient_extension;
  friend bool operator==(const ManifoldInput&, const ManifoldInput&) = default;
};

struct DocumentOptions {
  std::optional<std::string> mode;  // beta | alpha | both
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint64_t> starts;
  std::optional<std::uint64_t> cap;
  std::optional<Rational> tol;
  friend bool operator==(const DocumentOptions&, const DocumentOptions&) = default;
};

struct InputDocument {
  std::variant<ExplicitInput, ZonotopeInput, ManifoldInput> body;
  DocumentOptions options;

  bool is_manifold() const { return std::holds_alternative<ManifoldInput>(body); }
  friend bool operator==(const InputDocument&, const InputDocument&) = default;
};

struct ParseOptions {
  // When false, an explicit class list without all negatives is an error.
  bool allow_asymmetric = false;
};

/// Strict JSON schema: unknown or duplicate keys, floats and shape
/// mismatches are InputErrors naming the line (syntax) or field path.
InputDocument parse_input_text(const std::string& text, const ParseOptions& options = {});
InputDocument parse_input_file(const std::string& path, const ParseOptions& options = {});

/// Canonical JSON text (sorted keys, rationals as integers or "p/q").
std::string serialize_input(const InputDocument& doc);

/// Hex SHA-256 of the canonical serialization.
std::string input_digest(const InputDocument& doc);

}  // namespace betahull
