#pragma once

#include <map>

#include "gpdf/core.hpp"
#include "gpdf/verify.hpp"

namespace gpdf {

// Block size k -> ingredient of that size.
using IngredientMap = std::map<int, SPGDDInstance>;
using MgddMap = std::map<int, MGDDInstance>;

// Fills the leave of outer with inner. The scale factors are read off the
// outer leave, which must equal the inner ambient scaled coordinatewise.
DiffFamily compose_fill(const DiffFamily& outer, const DiffFamily& inner);

// 1D family over N x {0} plus plain SPGDDs over [v] -> family over N x [v]
// whose leave is (leave of the input) x [v].
DiffFamily inflate_by_spgdd(const DiffFamily& pdp_1d, const IngredientMap& ingredients);

SPGDDInstance spmgdd_from_pdf(const DiffFamily& pdf_1d, const MgddMap& mgdds);

SPGDDInstance spgdd_from_spmgdd(const SPGDDInstance& modified);

DiffFamily expand_second(const DiffFamily& genpdf, const IngredientMap& ingredients, const DiffFamily& pdf_v);

DiffFamily langford_to_pdp(const LangfordSeq& seq);

// The 1D family laid along the second axis: {0} x [m].
DiffFamily as_column(const DiffFamily& f_1d);

}  // namespace gpdf
