#pragma once

#include <optional>

#include "verbal/product.hpp"

namespace verbal {

/// Enumerates A ∗ʷ B as the image of A*B inside (A*B)/W(A*B) x (A x B),
/// by breadth-first congruence closure over reduced free-product words of
/// bounded length, doubling the bound until the partial multiplication
/// table closes or the cap on live congruence classes is hit.
///
/// On closure the result carries a certified normal-form section (the
/// closure is re-verified on the completed table: group axioms, every
/// relator instance trivial, |P| = |A| |B| |cartesian|).
///
/// Returns nullopt when the cap is exhausted; that is explicitly NOT a
/// proof of infiniteness.
std::optional<GenericEnumeration> generic_engine_enumerate(const FiniteGroup& a,
                                                           const FiniteGroup& b,
                                                           const WordSet& w,
                                                           std::size_t cap);

}  // namespace verbal
