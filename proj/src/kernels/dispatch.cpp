#include "scorebench/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

#if defined(__x86_64__) && defined(__GNUC__)
#include <cpuid.h>
#endif

namespace scorebench::kernels {

#if SCOREBENCH_HAVE_AVX2
const Ops* avx2_table();  // defined in avx2.cpp
#endif

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) && defined(__GNUC__)
    unsigned int eax, ebx, ecx, edx;
    if (!__get_cpuid(1, &eax, &ebx, &ecx, &edx)) return false;
    const bool has_fma = (ecx >> 12) & 1u;
    const bool has_osxsave = (ecx >> 27) & 1u;
    if (!has_fma || !has_osxsave) return false;
    if (!__get_cpuid_count(7, 0, &eax, &ebx, &ecx, &edx)) return false;
    return (ebx >> 5) & 1u;  // AVX2
#else
    return false;
#endif
}

const Ops* resolve(const char* request) {
    const std::string name = request ? request : "auto";
    if (name == "scalar") return &scalar();
    if (name == "avx2") {
        const Ops* t = avx2();
        if (t == nullptr) throw std::runtime_error("avx2 kernels unavailable on this machine");
        return t;
    }
    if (name == "auto") {
        if (const Ops* t = avx2()) return t;
        return &scalar();
    }
    throw std::runtime_error("unknown kernel backend '" + name + "'");
}

const Ops*& active_slot() {
    static const Ops* slot = resolve(std::getenv("SCOREBENCH_KERNELS"));
    return slot;
}

}  // namespace

const Ops* avx2() {
#if SCOREBENCH_HAVE_AVX2
    static const Ops* table = cpu_has_avx2_fma() ? avx2_table() : nullptr;
    return table;
#else
    return nullptr;
#endif
}

const Ops& active() {
    return *active_slot();
}

void select(const char* name) {
    active_slot() = resolve(name);
}

}  // namespace scorebench::kernels
