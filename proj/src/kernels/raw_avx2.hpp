#pragma once

// Raw-pointer entry points of the AVX2 translation unit. That unit is built
// with -mavx2 -mfma, so it instantiates no inline library templates: a COMDAT
// copy compiled for AVX2 could otherwise be picked by the linker for callers
// on the scalar path.

#include <cstddef>

namespace ucr::kernels::avx2::raw {

void expectation(double d0, double d1, double off_re, double off_im, const double* cos2, const double* sin2,
                 const double* cross, const double* cos_phi, const double* sin_phi, double* out, std::size_t n);
void j2_binary(const double* p, const double* q, double* out, std::size_t n);
std::size_t argmin(const double* v, std::size_t n);

}  // namespace ucr::kernels::avx2::raw
