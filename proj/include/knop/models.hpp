#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "knop/coxeter.hpp"
#include "knop/orbit_system.hpp"

namespace knop::models {

/// Canonical type labels. Two vertices have the same type iff their labels
/// are string-equal; product labels join the factor labels with '|'.
inline constexpr std::string_view kMaxTorus = "max-torus";
inline constexpr std::string_view kTrivialTorus = "trivial-torus";
inline constexpr char kLabelSeparator = '|';

/// The three spherical subgroups of SL(2) acting on the projective line.
enum class Sl2Variant {
  Torus,            // T: two fixed points and the dense orbit (one T-triple)
  TorusNormalizer,  // N(T): the fixed points merge into one orbit (N-pair)
  Borel,            // B: the Schubert cells (U-pair)
};

/// Hard-coded from the orbit geometry on P^1:
///   Torus           closed0, closed1 (rank 0, rho 0, dim 0, max-torus),
///                   open (rank 1, rho 1, dim 1, trivial-torus); two T edges.
///   TorusNormalizer closed (rank 0, rho 0, dim 0, max-torus),
///                   open (rank 1, rho 1, dim 1, trivial-torus); one N edge.
///                   The restriction of P^1 -> pt to the closed orbit {0, inf}
///                   has degree 2. H is disconnected with |W_H| = 2.
///   Borel           cell_e (dim 0), cell_s (dim 1), both rank 0, rho 0,
///                   max-torus; one U edge.
/// All three carry rank_G = rank_H = 1.
OrbitSystem sl2_model(Sl2Variant variant);

/// H = B: vertices are the Schubert cells, named by WeylElement::name(),
/// with dim = length and a U edge w -> w s_i for every ascent.
OrbitSystem weak_order_model(const WeylGroupSpec& spec);

/// The pair (G x G, diag G): vertices are the elements of W. Generators
/// 0..n-1 act on the left (U edge w -> s_i w on ascent), n..2n-1 on the right
/// (w -> w s_i). dim = |positive roots| + length(w).
OrbitSystem group_case_model(const WeylGroupSpec& spec);

/// Cartesian product. Ids are "(a,b,...)", ranks/rho/dim add, labels join
/// with '|', roots are numbered factor by factor, orders of W_H multiply and
/// h_connected is the conjunction. Refuses invalid factors with
/// InvalidSystemError.
///
/// Treating the product label as the product type is an assumption: the type
/// of a product orbit is a conjugacy class of subtori of the product torus,
/// which is taken to be the product of the factor classes.
OrbitSystem product_model(const std::vector<OrbitSystem>& systems);

/// Removes the parentheses of nested product ids: "((a,b),c)" -> "(a,b,c)".
std::string flatten_product_id(std::string_view id);

}  // namespace knop::models
