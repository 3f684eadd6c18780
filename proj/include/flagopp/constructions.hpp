#pragma once

#include <string>
#include <vector>

#include "flagopp/certificate.hpp"
#include "flagopp/projective.hpp"
#include "flagopp/quadrangle.hpp"

namespace flagopp {

enum class PgElement { point, plane };
enum class GqElement { point, line };

// Pencil F(x): all chambers whose line is incident with x. Always a maximal
// independent set of size (q^2+q+1)(q+1)^2.
Certificate pencil_pg(PgElement kind, int id, const PgContext& ctx);
std::vector<int> pencil_pg_vertices(PgElement kind, int id, const PgContext& ctx);

// GQ pencil F(x): for a point, all flags whose line passes through it; for a
// line, all flags whose point lies on it. Size (s+1)(t+1).
Certificate pencil_gq(GqElement kind, int id, const GqContext& ctx);
std::vector<int> pencil_gq_vertices(GqElement kind, int id, const GqContext& ctx);

// The nine-flag independent set of an order-(2,2) GQ attached to a grid:
// each grid point paired with its unique non-grid line.
Certificate exceptional_gq22(const Grid& grid, const GqContext& ctx);

// Maximal independent set of size t+1+2s in an order-(q,q) GQ: all flags on
// a grid point Q plus, for every other point P of the two grid lines
// through Q, the flag with the second grid line on P.
Certificate sharpness_set(const GqContext& ctx, const Grid& grid, int grid_point);

// Covering family of q^2+q pencils F(x): the points of `plane_id` off
// `line_id` and the planes on `line_id` other than `plane_id`. Every line
// of PG(3,q) is incident with one of these elements.
Certificate pg_covering_family(int line_id, int plane_id, const PgContext& ctx);

// The covering family resolved into a proper coloring by first-hit
// assignment in the family's deterministic order; q^2+q color classes.
Certificate pg_coloring(int line_id, int plane_id, const PgContext& ctx);

// Ovoid of Q(4,q): a hyperplane section meeting every GQ-line exactly once,
// found by scanning hyperplanes in deterministic order. Returns GQ point
// ids.
std::vector<int> ovoid_q4(const GqContext& ctx);

// Spread of W(q): the image of an ovoid of Q(4,q) under an explicit duality
// (an isomorphism dual(W(q)) <- Q(4,q) found by backtracking search).
// Returns W line ids partitioning the point set.
std::vector<int> spread_w(const GqContext& w_ctx, const GqContext& q4_ctx,
                          const std::vector<int>& ovoid_points);

// Proper coloring with st+1 pencil classes from a certified ovoid (kind =
// point) or spread (kind = line). Throws NotPartitionError if the classes
// fail to partition the flags.
Certificate coloring_from_ovoid_or_spread(const GqContext& ctx, GqElement kind,
                                          const std::vector<int>& elements);

// Covering family of the 36 pencils F(x) over the points x collinear with
// point_id in H(4,4); witnesses chi <= 36.
Certificate h44_cover(int point_id, const GqContext& ctx);

// Lifts a partition of the line set whose classes are pairwise-meeting
// line families to a proper coloring of the chamber graph (chamber -> class
// of its line). Throws NotLineIndependentError with a witness pair of skew
// lines if a class is invalid.
Certificate lift_line_coloring(const std::vector<std::vector<int>>& line_classes,
                               const PgContext& ctx);

// Line classes induced by the pg covering family (lines incident with each
// element, first-hit): input for lift_line_coloring.
std::vector<std::vector<int>> line_classes_from_cover(int line_id, int plane_id,
                                                      const PgContext& ctx);

// Incidence-structure isomorphism search (point bijection preserving
// collinearity, checked to map lines onto lines). Returns empty when the
// structures are not isomorphic.
std::vector<int> find_gq_isomorphism(const IncidenceGQ& from, const IncidenceGQ& to);

} // namespace flagopp
