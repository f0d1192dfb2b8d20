#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "blocklab/chartab.hpp"
#include "blocklab/gfmatrix.hpp"
#include "blocklab/gfpoly.hpp"

namespace blocklab {

// module over a group algebra, given by one action matrix per group
// generator; elements are row vectors, acting on the right
struct FpModule {
  std::shared_ptr<const Gfq> field;
  long dim = 0;
  std::vector<GfMatrix> gens;

  GfMatrix act_word(const std::vector<int>& word) const;
  FpModule dual() const;          // g acts by (g^-1)^T
  FpModule tensor_sign(const std::vector<int>& gen_signs) const;
};

FpModule permutation_module(const std::vector<Perm>& action, long q);
FpModule regular_module(const PermGroup& g, long q);

// module file format: "q dim gens" header line, then gens blocks of dim rows
std::string write_module(const FpModule& m);
FpModule read_module(const std::string& text);

// spin the row space of seeds to the smallest invariant subspace containing it
GfMatrix spin(const FpModule& m, const GfMatrix& seeds);

// submodule on an invariant row space, with the maps back and forth
struct SubQuotient {
  FpModule sub;
  GfMatrix basis;      // rows spanning the submodule inside the parent
  FpModule quotient;   // on the complement coordinates
  GfMatrix complement; // rows completing basis to a full basis
};
SubQuotient sub_quotient(const FpModule& m, const GfMatrix& invariant_rows);

// composition series: factors bottom-up with a full flag basis
struct CompositionSeries {
  std::vector<FpModule> factors;  // in series order from the bottom
  GfMatrix flag;                  // rows; prefixes span the series terms
};
CompositionSeries chop_series(const FpModule& m, Rng& rng);

// factors grouped into isomorphism classes
struct FactorClass {
  FpModule rep;
  long multiplicity;
};
std::vector<FactorClass> chop_composition_factors(const FpModule& m, Rng& rng);

// true with an invertible intertwiner, or false; exact (enumerates the
// hom space when it is small, which covers every use here)
struct IsoResult {
  bool isomorphic = false;
  std::optional<GfMatrix> witness;
  std::string distinguished_by;
};
IsoResult module_isomorphic(const FpModule& a, const FpModule& b, Rng& rng);

// basis of Hom(a, b) = { H : A_g H = H B_g }
std::vector<GfMatrix> hom_space(const FpModule& a, const FpModule& b);
std::vector<GfMatrix> endomorphism_algebra(const FpModule& m);

// basis of the enveloping algebra (image of the group algebra in End)
std::vector<GfMatrix> enveloping_algebra(const FpModule& m);

// Jacobson radical of a matrix algebra given by a basis:
// kernel of the actions on the composition factors of its natural module
std::vector<GfMatrix> algebra_radical(const FpModule& m,
                                      const std::vector<GfMatrix>& algebra, Rng& rng);
// independent oracle: characteristic-p trace-form chain
std::vector<GfMatrix> algebra_radical_trace(const std::vector<GfMatrix>& algebra,
                                            std::shared_ptr<const Gfq> field);

struct LoewyStructure {
  std::vector<std::vector<long>> radical_layers;  // factor-class indices per layer
  std::vector<std::vector<long>> socle_layers;
  std::vector<FpModule> classes;  // the distinct simples appearing
};
LoewyStructure radical_socle_series(const FpModule& m, Rng& rng);

// indecomposable direct summand with the maps into the parent
struct SummandRecord {
  FpModule module;
  GfMatrix embed;     // rows: dim x parent_dim
  long multiplicity;  // how many isomorphic copies the parent contains
  long end_dim;       // dim End, local by certification
};

// endomorphism sampler used by the splitter
using EndoSampler = std::function<GfMatrix(Rng&)>;

// orbital (coherent-configuration) basis sampler for a permutation module
EndoSampler orbital_sampler(const std::vector<Perm>& action, long q);
// generic sampler from an explicit endomorphism basis
EndoSampler basis_sampler(std::vector<GfMatrix> basis);

std::vector<SummandRecord> split_indecomposable_summands(const FpModule& m,
                                                         const EndoSampler& sampler, Rng& rng,
                                                         long tries_per_piece = 40);

// convenience: permutation module split with its own orbital sampler
std::vector<SummandRecord> split_permutation_module(const std::vector<Perm>& action, long q,
                                                    Rng& rng);

// Brauer character of a module: one value per p-regular class, by lifting
// eigenvalues through the canonical embedding generator
ClassFunction brauer_character_of_module(const FpModule& m, const ClassifiedGroup& cg,
                                         const std::vector<Perm>& action_gens, long p);
// same, with the action evaluated through explicit generator words
std::vector<Cyclotomic> brauer_character_values(const FpModule& m,
                                                const std::vector<std::vector<int>>& rep_words,
                                                const std::vector<long>& rep_orders, long p);

// non-negative integer solutions c of sum c_chi hat(chi) = brauer values
struct TrivialSourceRecord {
  std::vector<int> character;  // irreducible indices with multiplicity
  ClassFunction lift;
  VertexDescriptor vertex;
};
TrivialSourceRecord match_trivial_source_character(const std::vector<Cyclotomic>& brauer_values,
                                                   const TablePtr& table, const Block& block,
                                                   long p, const VertexDictionary& dict);

// block projection at module level: the action of the block idempotent
GfMatrix block_idempotent_action(const ClassifiedGroup& cg, const Block& block,
                                 const std::vector<Perm>& action_gens, long q);

long hom_dimension(const FpModule& a, const FpModule& b);

}  // namespace blocklab
