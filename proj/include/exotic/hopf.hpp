#pragma once

#include <string_view>

#include "exotic/clumped.hpp"
#include "exotic/forest.hpp"
#include "exotic/series.hpp"

namespace exotic {

using ClumpedTensor = Tensor<ClumpedForest>;

// tau -> gamma: attach the root of tau to every node vertex of gamma.
Series graft(const Forest& tau, const Forest& gamma);
Series graft(const Series& tau, const Series& gamma);
// Guin-Oudom extension: every root of pi is attached to a node vertex of nu
// (never to another root of pi); aroma factors of pi are carried along.
Series graft_forest(const Forest& pi, const Forest& nu);
Series graft_forest(const Series& pi, const Series& nu);
// Attach the root of tau to each of its own node vertices.
Series divergence(const Forest& tau);
// Stolon between the roots of two single-root forests.
Forest stolon_pair(const Forest& tau, const Forest& gamma);

// Grossman-Larson product. Each root of a either stays or is grafted onto a
// node vertex of b, independently of the other roots (a liana pair may be
// split between the two sides); aromas of a stay.
Series gl_product(const Forest& a, const Forest& b);
Series gl_product(const Series& a, const Series& b);
Series antipode_gl(const Forest& f);
Series antipode_gl(const Series& s);

// Deshuffle over connected factors. The aroma-linear variant keeps every
// aroma factor in the left tensor slot.
ForestTensor deshuffle(const Forest& f, bool aroma_linear = false);
Series antipode_deshuffle(const Forest& f, bool aroma_linear = false);

ForestTensor bck_coproduct(const Forest& f);

// Black vertices are substituted; numbered and letter vertices are fixed.
ClumpedTensor cem_coaction(const Forest& f);
// cem_coaction minus the all-singletons term and the f (x) b term.
ClumpedTensor cem_coaction_reduced(const Forest& f);
// Every node vertex is substituted; each block is tagged with a decoration
// from the alphabet. Lianas are not supported in this mode.
ClumpedTensor cem_coaction_decorated(const Forest& f, std::string_view alphabet);

// Substitution action p |> pi. Untagged p replaces the black vertices of pi;
// a tagged p replaces, for each tag d, the vertices decorated by d.
Series substitute_action(const ClumpedForest& p, const Forest& pi);

// (a * b)(pi) = sum a(pi \ pi0) b(pi0)
Functional compose(const Functional& a, const Functional& b);
// (b_c star a)(pi) = sum b_c(p) a(pi / p), b_c the clump character of b0.
Functional substitute(const Functional& b0, const Functional& a);

}  // namespace exotic
