// SU(2,1) over L = Q(theta): 3x3 matrices of QuadNum, the standard
// generators, Bruhat and Iwahori decompositions, congruence-subgroup
// membership, the SL2 embedding, and seeded random elements.
#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string>

#include "su21/localfield.hpp"

namespace Eigen {
template <>
struct NumTraits<su21::QuadNum> : GenericNumTraits<su21::QuadNum> {
  using Real = su21::QuadNum;
  using NonInteger = su21::QuadNum;
  using Nested = su21::QuadNum;
  using Literal = long;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 4,
    AddCost = 8,
    MulCost = 16
  };
  static inline su21::QuadNum epsilon() { return su21::QuadNum(0); }
  static inline su21::QuadNum dummy_precision() { return su21::QuadNum(0); }
  static inline int digits10() { return 0; }
};
}  // namespace Eigen

namespace su21 {

using Mat3 = Eigen::Matrix<QuadNum, 3, 3>;

struct UnipotentParam {
  QuadNum r, m;
};

struct BruhatData {
  bool borel;
  // Borel: gamma = h(lambda) * x_plus(upper).
  // Big cell: gamma = x_plus(upper) * h(lambda) * w * x_plus(lower).
  UnipotentParam upper;
  QuadNum lambda;
  UnipotentParam lower;
};

struct IwahoriData {
  UnipotentParam upper;
  QuadNum torus;
  UnipotentParam lower;
};

Mat3 identity3();
Mat3 conj_mat(const Mat3& g);
Mat3 inv(const Mat3& g);  // J' * conj(g)^T * J' for group elements
Mat3 mul(const Mat3& g, const Mat3& h);

bool is_member(const Mat3& g);

Mat3 make_x_plus(const QuadNum& r, const QuadNum& m);
Mat3 make_x_minus(const QuadNum& r, const QuadNum& m);
Mat3 make_h(const QuadNum& lambda);
Mat3 make_w(const QuadNum& r, const QuadNum& m);

BruhatData bruhat(const Mat3& g);
Mat3 recompose_bruhat(const BruhatData& b);

// Iwahori factors gamma = x_plus(upper) h(torus) x_minus(lower); requires a
// nonzero (3,3)-entry.  The prime overload additionally requires that entry
// to be a local unit at p.
IwahoriData iwahori(const Mat3& g);
IwahoriData iwahori(const Mat3& g, const Int& p);
Mat3 recompose_iwahori(const IwahoriData& w);

bool in_gamma_p(const Mat3& g, const Int& p);
bool in_gamma_hat_p(const Mat3& g, const Int& p);
bool in_global_gamma(const Mat3& g);

Mat3 sl2_embed(const Rat& a, const Rat& b, const Rat& c, const Rat& d);

Mat3 random_group_element(std::uint64_t seed);
Mat3 random_gamma_element(std::uint64_t seed);
Mat3 random_gamma_p_element(std::uint64_t seed, long p);
Mat3 random_gamma_hat_p_element(std::uint64_t seed, long p);

// SL2(Z) matrices in the congruence set carried into the group by sl2_embed
// (a = d = 1 mod 8d, b = 0 mod 8, c = 0 mod 8d).
struct SL2Mat {
  Rat a, b, c, d;
};
SL2Mat random_congruence_sl2(std::uint64_t seed);

std::string mat_to_json(const Mat3& g);
Mat3 mat_from_json(const std::string& text);

}  // namespace su21
