#include "thetarep/special.hpp"

#include <array>
#include <cmath>
#include <numbers>

#include "thetarep/errors.hpp"

namespace thetarep::special {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kShiftTo = 15.0;

// B_2, B_4, ..., B_20
constexpr std::array<double, 10> kBernoulli = {
    1.0 / 6.0,        -1.0 / 30.0,      1.0 / 42.0,        -1.0 / 30.0,
    5.0 / 66.0,       -691.0 / 2730.0,  7.0 / 6.0,         -3617.0 / 510.0,
    43867.0 / 798.0,  -174611.0 / 330.0};

bool near_pole(cplx z) {
  if (z.real() > 0.5) return false;
  const double r = std::round(z.real());
  return std::abs(z - cplx(r, 0.0)) < 1e-14;
}

// log sin(pi z), evaluated from the exponential that stays bounded.
cplx log_sin_pi(cplx z) {
  const cplx i(0.0, 1.0);
  if (z.imag() >= 0.0) {
    const cplx e = std::exp(2.0 * kPi * i * z);
    return -i * kPi * z + std::log((e - 1.0) / (2.0 * i));
  }
  const cplx e = std::exp(-2.0 * kPi * i * z);
  return i * kPi * z + std::log((1.0 - e) / (2.0 * i));
}

cplx cot_pi(cplx z) {
  const cplx i(0.0, 1.0);
  if (z.imag() >= 0.0) {
    const cplx e = std::exp(2.0 * kPi * i * z);
    return i * (e + 1.0) / (e - 1.0);
  }
  const cplx f = std::exp(-2.0 * kPi * i * z);
  return i * (1.0 + f) / (1.0 - f);
}

cplx log_gamma_stirling(cplx z) {
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx sum = 0.0;
  cplx pw = inv;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double two_k = 2.0 * static_cast<double>(k + 1);
    sum += kBernoulli[k] / (two_k * (two_k - 1.0)) * pw;
    pw *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + sum;
}

}  // namespace

cplx log_gamma(cplx z) {
  if (near_pole(z)) throw DomainError("log_gamma: argument at a pole of Gamma");
  if (z.real() < 0.5) {
    return std::log(kPi) - log_sin_pi(z) - log_gamma(1.0 - z);
  }
  cplx prod = 1.0;
  cplx log_acc = 0.0;
  int steps = 0;
  while (z.real() < kShiftTo) {
    prod *= z;
    z += 1.0;
    if (++steps % 8 == 0) {
      log_acc += std::log(prod);
      prod = 1.0;
    }
  }
  log_acc += std::log(prod);
  return log_gamma_stirling(z) - log_acc;
}

cplx digamma(cplx z) {
  if (near_pole(z)) throw DomainError("digamma: argument at a pole");
  if (z.real() < 0.5) {
    return digamma(1.0 - z) - kPi * cot_pi(z);
  }
  cplx acc = 0.0;
  while (z.real() < kShiftTo) {
    acc += 1.0 / z;
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx sum = 0.0;
  cplx pw = inv2;
  for (std::size_t k = 0; k < kBernoulli.size(); ++k) {
    const double two_k = 2.0 * static_cast<double>(k + 1);
    sum += kBernoulli[k] / two_k * pw;
    pw *= inv2;
  }
  return std::log(z) - 0.5 * inv - sum - acc;
}

cplx trigamma(cplx z) {
  if (near_pole(z)) throw DomainError("trigamma: argument at a pole");
  if (z.real() < 0.5) {
    const cplx s = std::exp(log_sin_pi(z));
    return kPi * kPi / (s * s) - trigamma(1.0 - z);
  }
  cplx acc = 0.0;
  while (z.real() < kShiftTo) {
    acc += 1.0 / (z * z);
    z += 1.0;
  }
  const cplx inv = 1.0 / z;
  const cplx inv2 = inv * inv;
  cplx sum = 0.0;
  cplx pw = inv2 * inv;
  for (double b : kBernoulli) {
    sum += b * pw;
    pw *= inv2;
  }
  return inv + 0.5 * inv2 + sum + acc;
}

}  // namespace thetarep::special
