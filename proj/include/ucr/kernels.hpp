#pragma once

// Batched inner loops of the qubit bound search. Each kernel has a scalar
// reference in ucr::kernels::scalar and, on x86-64, an AVX2+FMA variant in
// ucr::kernels::avx2. The unqualified entry points dispatch at runtime to the
// best variant the CPU supports; set_active_isa() pins a variant for testing.

#include <cstddef>
#include <span>
#include <vector>

namespace ucr::kernels {

enum class Isa { scalar, avx2 };

const char* isa_name(Isa isa) noexcept;

/// Best variant supported by both this build and the running CPU.
Isa detected_isa() noexcept;
Isa active_isa() noexcept;
/// Throws BadParameter if `isa` is not available.
void set_active_isa(Isa isa);

/// Qubit effect E written in a chart basis {|c₁⟩, |c₂⟩}:
/// ⟨ψ|E|ψ⟩ = d0·cos²α + d1·sin²α + 2 cosα sinα (off_re cosφ − off_im sinφ)
/// for |ψ⟩ = cosα|c₁⟩ + e^{iφ} sinα|c₂⟩, where off = ⟨c₁|E|c₂⟩.
struct QubitEffect {
  double d0 = 0.0;
  double d1 = 0.0;
  double off_re = 0.0;
  double off_im = 0.0;
};

/// Structure-of-arrays chart points.
struct QubitPoints {
  std::vector<double> alpha, phi;
  std::vector<double> cos2, sin2, cross, cos_phi, sin_phi;  ///< cross = cosα sinα

  std::size_t size() const noexcept { return alpha.size(); }
  void push_back(double a, double f);
};

/// Row-major grid: α_i = i·(π/2)/(n_alpha−1), φ_j = j·2π/n_phi, point i·n_phi + j.
QubitPoints qubit_grid(std::size_t n_alpha, std::size_t n_phi);

void expectation(const QubitEffect& e, const QubitPoints& pts, std::span<double> out);

/// J₂ of two-outcome pairs given by their first components p_i, q_i.
void j2_binary(std::span<const double> p, std::span<const double> q, std::span<double> out);

/// Index of the first minimum; NaN entries are never selected. Empty input returns 0.
std::size_t argmin(std::span<const double> v);

namespace scalar {
void expectation(const QubitEffect& e, const QubitPoints& pts, std::span<double> out);
void j2_binary(std::span<const double> p, std::span<const double> q, std::span<double> out);
std::size_t argmin(std::span<const double> v);
}  // namespace scalar

#if defined(UCR_HAVE_AVX2_KERNELS)
namespace avx2 {
void expectation(const QubitEffect& e, const QubitPoints& pts, std::span<double> out);
void j2_binary(std::span<const double> p, std::span<const double> q, std::span<double> out);
std::size_t argmin(std::span<const double> v);
}  // namespace avx2
#endif

}  // namespace ucr::kernels
