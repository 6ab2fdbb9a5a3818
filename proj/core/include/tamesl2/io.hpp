#pragma once

#include "tamesl2/complex.hpp"
#include "tamesl2/grouplab.hpp"
#include "tamesl2/tame.hpp"

#include <json.hpp>

#include <string>

namespace tamesl2::io {

using json = nlohmann::ordered_json;

// Q restricts values to rationals (parse errors on imaginary parts and
// two-part coefficient output); QI always carries both parts.
enum class FieldMode { Q, QI };

json coeff_to_json(const Coeff& c, FieldMode mode);
Coeff coeff_from_json(const json& j, FieldMode mode);

// terms as [[i,j,k,l], "num/den"] (Q) or [[i,j,k,l], "re", "im"] (QI),
// in descending DivisionOrder
json poly_to_json(const Poly& p, FieldMode mode);
Poly poly_from_json(const json& j, FieldMode mode);

json weight_to_json(const WeightVec& w);

json mat_to_json(const Mat4& m, FieldMode mode);
Mat4 mat_from_json(const json& j, FieldMode mode);

// {"components": [poly, poly, poly, poly]}
json auto_to_json(const TameAuto& f, FieldMode mode);
TameAuto auto_from_json(const json& j, FieldMode mode);

// {"word": [ {"elem": {"family": "...", "P": poly}} | {"orth": mat}, ... ]}
json word_to_json(const TameWord& w, FieldMode mode);
TameWord word_from_json(const json& j, FieldMode mode);

json trace_to_json(const ReductionTrace& t, FieldMode mode);
json verdict_to_json(const TameVerdict& v, FieldMode mode);

json subcomplex_to_json(const SubComplex& s, FieldMode mode);
std::string subcomplex_to_dot(const SubComplex& s);

json isometry_to_json(const IsometryReport& r, FieldMode mode);

} // namespace tamesl2::io
