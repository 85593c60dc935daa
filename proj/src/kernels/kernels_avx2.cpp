#include <immintrin.h>

#include "raw_avx2.hpp"

namespace ucr::kernels::avx2::raw {

namespace {

inline double max_d(double a, double b) { return a < b ? b : a; }
inline double min_d(double a, double b) { return b < a ? b : a; }

}  // namespace

void expectation(double d0, double d1, double off_re, double off_im, const double* cos2, const double* sin2,
                 const double* cross, const double* cos_phi, const double* sin_phi, double* out, std::size_t n) {
  const __m256d vd0 = _mm256_set1_pd(d0);
  const __m256d vd1 = _mm256_set1_pd(d1);
  const __m256d re = _mm256_set1_pd(off_re);
  const __m256d im = _mm256_set1_pd(off_im);
  const __m256d two = _mm256_set1_pd(2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d interference =
        _mm256_fmsub_pd(re, _mm256_loadu_pd(cos_phi + i), _mm256_mul_pd(im, _mm256_loadu_pd(sin_phi + i)));
    const __m256d cross2 = _mm256_mul_pd(two, _mm256_loadu_pd(cross + i));
    __m256d acc = _mm256_mul_pd(vd0, _mm256_loadu_pd(cos2 + i));
    acc = _mm256_fmadd_pd(vd1, _mm256_loadu_pd(sin2 + i), acc);
    acc = _mm256_fmadd_pd(cross2, interference, acc);
    _mm256_storeu_pd(out + i, acc);
  }
  for (; i < n; ++i) {
    const double interference = off_re * cos_phi[i] - off_im * sin_phi[i];
    out[i] = d0 * cos2[i] + d1 * sin2[i] + 2.0 * cross[i] * interference;
  }
}

void j2_binary(const double* p, const double* q, double* out, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  // Plain mul/add (no FMA) keeps results bit-identical to the scalar path.
  // max/min operand order matches max_d/min_d below and the scalar std::max/std::min.
  for (; i + 4 <= n; i += 4) {
    const __m256d pv = _mm256_loadu_pd(p + i);
    const __m256d qv = _mm256_loadu_pd(q + i);
    const __m256d pc = _mm256_sub_pd(one, pv);
    const __m256d qc = _mm256_sub_pd(one, qv);
    const __m256d hi = _mm256_mul_pd(_mm256_max_pd(pc, pv), _mm256_max_pd(qc, qv));
    const __m256d lo = _mm256_mul_pd(_mm256_min_pd(pc, pv), _mm256_min_pd(qc, qv));
    _mm256_storeu_pd(out + i, _mm256_sub_pd(one, _mm256_add_pd(hi, lo)));
  }
  for (; i < n; ++i) {
    const double pc = 1.0 - p[i];
    const double qc = 1.0 - q[i];
    out[i] = 1.0 - (max_d(p[i], pc) * max_d(q[i], qc) + min_d(p[i], pc) * min_d(q[i], qc));
  }
}

std::size_t argmin(const double* v, std::size_t n) {
  if (n == 0) return 0;
  const __m256d inf = _mm256_set1_pd(__builtin_inf());
  __m256d lane_min = inf;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d x = _mm256_loadu_pd(v + i);
    x = _mm256_blendv_pd(x, inf, _mm256_cmp_pd(x, x, _CMP_UNORD_Q));
    lane_min = _mm256_min_pd(lane_min, x);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, lane_min);
  double m = min_d(min_d(lanes[0], lanes[1]), min_d(lanes[2], lanes[3]));
  for (; i < n; ++i)
    if (v[i] < m) m = v[i];

  // Second pass: first index holding the minimum.
  const __m256d target = _mm256_set1_pd(m);
  for (i = 0; i + 4 <= n; i += 4) {
    const int mask = _mm256_movemask_pd(_mm256_cmp_pd(_mm256_loadu_pd(v + i), target, _CMP_EQ_OQ));
    if (mask != 0) return i + static_cast<std::size_t>(__builtin_ctz(static_cast<unsigned>(mask)));
  }
  for (; i < n; ++i)
    if (v[i] == m) return i;
  return 0;  // every entry is NaN
}

}  // namespace ucr::kernels::avx2::raw
