#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "thetarep/errors.hpp"
#include "thetarep/special.hpp"

using thetarep::special::cplx;
namespace sp = thetarep::special;

namespace {

struct GammaCase {
  cplx z;
  cplx log_gamma;
  cplx digamma;
  cplx trigamma;
};

// Reference values from an arbitrary-precision evaluation (30 digits).
const GammaCase kCases[] = {
    {{0.5, 0.0}, {0.572364942924700087, 0.0}, {-1.963510026021423479, 0.0}, {4.934802200544679309, 0.0}},
    {{3.7, 2.2},
     {0.726446751624426474, 2.718064292441145666},
     {1.357696942039571357, 0.599729405175855532},
     {0.212502571763818164, -0.144510703300729752}},
    {{-2.3, 0.7},
     {-1.266429485193089380, -8.076782366712055633},
     {1.137217473608474503, 2.874247053373655292},
     {-0.174087266042162148, 0.372803556750155351}},
    {{0.5, 1.0},
     {-0.652790644204372915, -0.955007724342569110},
     {-0.051761650994412543, 1.564940517815879283},
     {0.036724551941014545, -1.117068657829600127}},
    {{20.0, -15.0},
     {34.03716721539875053, -45.82940916089812497},
     {3.202838473558838298, -0.655629097313798700},
     {0.032220248736023479, 0.024777984255054381}},
    {{1e-3, 0.0}, {6.907178885383853662, 0.0}, {-1000.575571931810280, 0.0}, {1000001.642533195827, 0.0}},
};

double rel(cplx a, cplx b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Special, LogGammaMatchesReference) {
  for (const auto& c : kCases) {
    const cplx lg = sp::log_gamma(c.z);
    EXPECT_NEAR(lg.real(), c.log_gamma.real(), 1e-13 * std::max(1.0, std::abs(c.log_gamma))) << c.z;
    // The imaginary part is only fixed modulo 2 pi across branches.
    const double d = std::remainder(lg.imag() - c.log_gamma.imag(), 2.0 * std::numbers::pi);
    EXPECT_NEAR(d, 0.0, 1e-12) << c.z;
  }
}

TEST(Special, DigammaAndTrigammaMatchReference) {
  for (const auto& c : kCases) {
    EXPECT_LT(rel(sp::digamma(c.z), c.digamma), 1e-13) << c.z;
    EXPECT_LT(rel(sp::trigamma(c.z), c.trigamma), 1e-12) << c.z;
  }
}

TEST(Special, KnownConstants) {
  const double g = sp::kEulerGamma;
  EXPECT_NEAR(sp::digamma(1.0).real(), -g, 1e-15);
  EXPECT_NEAR(sp::digamma(0.5).real(), -g - 2.0 * std::log(2.0), 1e-14);
  EXPECT_NEAR(sp::trigamma(1.0).real(), std::numbers::pi * std::numbers::pi / 6.0, 1e-14);
  EXPECT_NEAR(sp::log_gamma(1.0).real(), 0.0, 1e-14);
  EXPECT_NEAR(sp::log_gamma(11.0).real(), std::log(3628800.0), 1e-13);
}

TEST(Special, RecurrenceInComplexPlane) {
  for (cplx z : {cplx(0.3, 0.4), cplx(-4.5, 2.0), cplx(7.0, -3.0)}) {
    EXPECT_LT(std::abs(std::exp(sp::log_gamma(z + 1.0) - sp::log_gamma(z)) - z) / std::abs(z), 1e-13);
    EXPECT_LT(std::abs(sp::digamma(z + 1.0) - sp::digamma(z) - 1.0 / z), 1e-13);
  }
}

TEST(Special, PolesRaiseDomainError) {
  EXPECT_THROW(sp::log_gamma(0.0), thetarep::DomainError);
  EXPECT_THROW(sp::log_gamma(-3.0), thetarep::DomainError);
  EXPECT_THROW(sp::digamma(-1.0), thetarep::DomainError);
}
