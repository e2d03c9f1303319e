#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "spatialcorr/data.hpp"
#include "spatialcorr/weights.hpp"

namespace spatialcorr {

enum class DistanceFormat { kSquare, kLong };

std::optional<DistanceFormat> parse_distance_format(std::string_view name) noexcept;

/// Attributes CSV with header `id,x,y`, one row per unit. Throws ParseError
/// (with line/column) on malformed rows or missing values and the
/// RawAttributeTable errors on invalid content.
RawAttributeTable read_attributes(std::istream& in,
                                  std::string_view source = "<stream>");
RawAttributeTable parse_attributes(const std::filesystem::path& path);

/// Distance CSV in square form (`id,<id1>,<id2>,...` then one row per id) or
/// long form (`from,to,distance`, each unordered pair exactly once). The
/// result is ordered like `ids`; an empty `ids` keeps file order (square) or
/// first-appearance order (long). Throws ParseError, UnknownId, SchemaError
/// (id sets differ), MissingPair, DuplicatePair and the DistanceMatrix
/// validation errors.
DistanceMatrix read_distances(std::istream& in, DistanceFormat format,
                              const std::vector<std::string>& ids = {},
                              std::string_view source = "<stream>");
DistanceMatrix parse_distances(const std::filesystem::path& path,
                               DistanceFormat format,
                               const std::vector<std::string>& ids = {});

/// Square CSV `id,<id1>,...` with 15 significant digits per cell.
void write_matrix_csv(std::ostream& out, const std::vector<std::string>& ids,
                      const Matrix& m);

/// printf("%.15g") of v; "nan"/"inf" for non-finite values.
std::string format_number(double v);

}  // namespace spatialcorr
