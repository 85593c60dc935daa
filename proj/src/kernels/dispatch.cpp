#include <atomic>

#include "ucr/error.hpp"
#include "ucr/kernels.hpp"

#if defined(UCR_HAVE_AVX2_KERNELS)
#include "raw_avx2.hpp"
#endif

namespace ucr::kernels {

namespace {

bool cpu_has_avx2() noexcept {
#if defined(UCR_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{detected_isa()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
  }
  return "unknown";
}

Isa detected_isa() noexcept {
  static const Isa isa = cpu_has_avx2() ? Isa::avx2 : Isa::scalar;
  return isa;
}

Isa active_isa() noexcept { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::avx2 && detected_isa() != Isa::avx2)
    throw Error(Errc::bad_parameter, "AVX2 kernels are not available on this host");
  active().store(isa, std::memory_order_relaxed);
}

#if defined(UCR_HAVE_AVX2_KERNELS)
namespace avx2 {

void expectation(const QubitEffect& e, const QubitPoints& pts, std::span<double> out) {
  raw::expectation(e.d0, e.d1, e.off_re, e.off_im, pts.cos2.data(), pts.sin2.data(), pts.cross.data(),
                   pts.cos_phi.data(), pts.sin_phi.data(), out.data(), pts.size());
}

void j2_binary(std::span<const double> p, std::span<const double> q, std::span<double> out) {
  raw::j2_binary(p.data(), q.data(), out.data(), p.size());
}

std::size_t argmin(std::span<const double> v) { return raw::argmin(v.data(), v.size()); }

}  // namespace avx2

#define UCR_DISPATCH(fn, ...) \
  (active_isa() == Isa::avx2 ? avx2::fn(__VA_ARGS__) : scalar::fn(__VA_ARGS__))
#else
#define UCR_DISPATCH(fn, ...) scalar::fn(__VA_ARGS__)
#endif

void expectation(const QubitEffect& e, const QubitPoints& pts, std::span<double> out) {
  if (out.size() < pts.size()) throw Error(Errc::dimension_mismatch, "output span shorter than point set");
  UCR_DISPATCH(expectation, e, pts, out);
}

void j2_binary(std::span<const double> p, std::span<const double> q, std::span<double> out) {
  if (q.size() != p.size() || out.size() < p.size())
    throw Error(Errc::dimension_mismatch, "j2_binary operand lengths differ");
  UCR_DISPATCH(j2_binary, p, q, out);
}

std::size_t argmin(std::span<const double> v) { return UCR_DISPATCH(argmin, v); }

#undef UCR_DISPATCH

}  // namespace ucr::kernels
