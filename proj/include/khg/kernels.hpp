#pragma once

// Word-level population-count kernels behind the bitset type.
//
// Every hot loop in this project (joint-degree intersections, pair densities
// e(A,B), degree profiles into vertex sets) reduces to popcount over AND of
// u64 arrays. A scalar reference implementation always exists; wider variants
// (AVX2 on x86-64, NEON on aarch64) are compiled when the target supports
// them and selected at runtime. All variants are equivalence-tested against
// the scalar kernel.

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace khg::kernels {

using CountFn    = std::uint64_t (*)(const std::uint64_t*, std::size_t);
using CountAndFn = std::uint64_t (*)(const std::uint64_t*, const std::uint64_t*, std::size_t);

struct Variant {
    const char* name;
    CountFn     count;
    CountAndFn  count_and;
};

// Scalar reference kernels.
std::uint64_t count_scalar(const std::uint64_t* a, std::size_t n);
std::uint64_t count_and_scalar(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

// All variants compiled into this binary and usable on this machine.
const std::vector<Variant>& available_variants();

// Name of the variant the dispatcher picked (override with KHG_KERNEL=name).
const char* active_variant();

// Dispatched entry points.
std::uint64_t count(const std::uint64_t* a, std::size_t n);
std::uint64_t count_and(const std::uint64_t* a, const std::uint64_t* b, std::size_t n);

} // namespace khg::kernels
