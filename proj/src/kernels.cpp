#include "khg/kernels.hpp"

#include <atomic>
#include <bit>
#include <cstdlib>
#include <cstring>

#if defined(__x86_64__) || defined(_M_X64)
#define KHG_X86_64 1
#include <immintrin.h>
#else
#define KHG_X86_64 0
#endif

#if defined(__aarch64__)
#define KHG_AARCH64 1
#include <arm_neon.h>
#else
#define KHG_AARCH64 0
#endif

namespace khg::kernels {

std::uint64_t count_scalar(const std::uint64_t* a, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i]));
    return s;
}

std::uint64_t count_and_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    std::uint64_t s = 0;
    for (std::size_t i = 0; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return s;
}

#if KHG_X86_64

// Nibble-LUT popcount over 256-bit lanes, accumulated with SAD against zero.
__attribute__((target("avx2"))) static inline __m256i popcnt256(__m256i v) {
    const __m256i lut = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                         0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
    const __m256i low = _mm256_set1_epi8(0x0f);
    __m256i lo = _mm256_and_si256(v, low);
    __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low);
    __m256i cnt = _mm256_add_epi8(_mm256_shuffle_epi8(lut, lo), _mm256_shuffle_epi8(lut, hi));
    return _mm256_sad_epu8(cnt, _mm256_setzero_si256());
}

__attribute__((target("avx2")))
static std::uint64_t count_avx2(const std::uint64_t* a, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i v = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        acc = _mm256_add_epi64(acc, popcnt256(v));
    }
    std::uint64_t lanes[4];
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i]));
    return s;
}

__attribute__((target("avx2")))
static std::uint64_t count_and_avx2(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    __m256i acc = _mm256_setzero_si256();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
        __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
        acc = _mm256_add_epi64(acc, popcnt256(_mm256_and_si256(va, vb)));
    }
    std::uint64_t lanes[4];
    _mm256_storeu_si256(reinterpret_cast<__m256i*>(lanes), acc);
    std::uint64_t s = lanes[0] + lanes[1] + lanes[2] + lanes[3];
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return s;
}

#endif // KHG_X86_64

#if KHG_AARCH64

static std::uint64_t count_neon(const std::uint64_t* a, std::size_t n) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t v = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(v)))));
    }
    std::uint64_t s = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i]));
    return s;
}

static std::uint64_t count_and_neon(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    uint64x2_t acc = vdupq_n_u64(0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        uint8x16_t va = vld1q_u8(reinterpret_cast<const std::uint8_t*>(a + i));
        uint8x16_t vb = vld1q_u8(reinterpret_cast<const std::uint8_t*>(b + i));
        acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(vandq_u8(va, vb))))));
    }
    std::uint64_t s = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
    for (; i < n; ++i) s += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    return s;
}

#endif // KHG_AARCH64

const std::vector<Variant>& available_variants() {
    static const std::vector<Variant> variants = [] {
        std::vector<Variant> v;
        v.push_back({"scalar", &count_scalar, &count_and_scalar});
#if KHG_X86_64
        if (__builtin_cpu_supports("avx2"))
            v.push_back({"avx2", &count_avx2, &count_and_avx2});
#endif
#if KHG_AARCH64
        v.push_back({"neon", &count_neon, &count_and_neon});
#endif
        return v;
    }();
    return variants;
}

namespace {

struct Dispatch {
    const Variant* v;
    Dispatch() {
        const auto& all = available_variants();
        v = &all.back(); // widest available
        if (const char* want = std::getenv("KHG_KERNEL")) {
            for (const auto& cand : all)
                if (std::strcmp(cand.name, want) == 0) v = &cand;
        }
    }
};

const Variant& active() {
    static Dispatch d;
    return *d.v;
}

} // namespace

const char* active_variant() { return active().name; }

std::uint64_t count(const std::uint64_t* a, std::size_t n) { return active().count(a, n); }

std::uint64_t count_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n) {
    return active().count_and(a, b, n);
}

} // namespace khg::kernels
