#pragma once

#include <string>

#include "json.hpp"
#include "uc/density.hpp"
#include "uc/eisenstein.hpp"
#include "uc/hermitian.hpp"
#include "uc/lattice.hpp"

namespace uc::cli {

using Json = nlohmann::json;  // std::map underneath, so keys come out sorted

Json rational_json(const Rational& q);
Json integer_json(const Int& z);  // JSON number when it fits in 64 bits, else a decimal string

HermitianMatrix parse_hermitian(const std::string& text, const FieldContext& ctx);
HermitianMatrix hermitian_from_json(const Json& j, const FieldContext& ctx);
Json to_json(const HermitianMatrix& t);

HermitianLattice parse_lattice(const std::string& text, const FieldContext& ctx);
Json to_json(const HermitianLattice& l);

Json to_json(const SpaceInvariants& v);
Json to_json(const DiffReport& d);
Json to_json(const AlphaResult& a);
Json to_json(const DensityPolynomial& f);
Json to_json(const WhittakerValue& w);
Json to_json(const FourierCoefficientReport& r);
Json to_json(const GenusRecord& g);

}  // namespace uc::cli
