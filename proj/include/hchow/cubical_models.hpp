/**
 * @file   cubical_models.hpp
 * @brief  Concrete cubical modules: subsets and quotients of the standard
 *         cube, the multilinear polynomial model with its extra degeneracies,
 *         and the constant model.
 */
#pragma once

#include "hchow/cubical.hpp"

#include <string>
#include <vector>

namespace hchow {

// A face of the k-cube, one character per coordinate: '0', '1' or '*'.
using FacePattern = std::string;

// Cubical set of all cubical maps from the n-cube into the k-cube whose image
// lies in one of the generating faces (the full cube when `generators` holds
// the all-'*' pattern). When `quotient_by` is nonempty the result is the
// quotient by the cubical subset those faces generate.
CubicalModule cube_subset_module(Domain dom, int k, int top, const std::vector<FacePattern>& generators,
                                 const std::vector<FacePattern>& quotient_by = {});

// The map of cubical modules induced by the inclusion of the subset generated
// by `small` into the subset generated by `big` (small must be contained in big).
std::vector<Matrix> cube_subset_inclusion(Domain dom, int k, int top, const std::vector<FacePattern>& small,
                                          const std::vector<FacePattern>& big);

// Multilinear polynomials in t_1..t_n with faces t_i = 0 (delta^0) and
// t_i = 1 (delta^1), and h_j the pullback along (s, t) -> s + t - s t.
CubicalModule multilinear_module(Domain dom, int top, ExtraDegeneracies* h = nullptr);

// One copy of the ground ring in every level, all operators the identity.
CubicalModule constant_module(Domain dom, int top, ExtraDegeneracies* h = nullptr);

// Random direct sums of cube subsets and quotients, recoordinatized.
CubicalModule random_cubical_module(Rng& rng, Domain dom, int top);
// Random cones of cube-subset inclusions, recoordinatized.
CubicalCochainComplex random_cubical_cochain_complex(Rng& rng, Domain dom, int top);

}  // namespace hchow
