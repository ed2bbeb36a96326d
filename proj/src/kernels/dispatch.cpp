#include "lcbc/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace lcbc::kernels {

namespace {

std::vector<const KernelTable*> variants() {
    std::vector<const KernelTable*> v;
    v.push_back(&scalar_table);
#if defined(LCBC_HAVE_AVX2_TU)
    v.push_back(&avx2_table);
#endif
#if defined(LCBC_HAVE_NEON_TU)
    v.push_back(&neon_table);
#endif
    return v;
}

const KernelTable* pick_default() {
#if defined(LCBC_HAVE_AVX2_TU)
    if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma"))
        return &avx2_table;
#endif
#if defined(LCBC_HAVE_NEON_TU)
    return &neon_table;  // baseline on aarch64
#endif
    return &scalar_table;
}

const KernelTable* find_by_name(const std::string& name) {
    for (const KernelTable* t : variants())
        if (name == t->name) return t;
    return nullptr;
}

const KernelTable*& current() {
    static const KernelTable* table = [] {
        if (const char* env = std::getenv("LCBC_KERNEL")) {
            if (const KernelTable* t = find_by_name(env)) return t;
        }
        return pick_default();
    }();
    return table;
}

} // namespace

const KernelTable& active() { return *current(); }

void force(const std::string& name) {
    const KernelTable* t = find_by_name(name);
    if (!t) throw std::invalid_argument("kernels::force: no variant named '" + name + "'");
    current() = t;
}

const char* const* available(int* count) {
    static std::vector<const char*> names = [] {
        std::vector<const char*> v;
        for (const KernelTable* t : variants()) v.push_back(t->name);
        return v;
    }();
    *count = int(names.size());
    return names.data();
}

} // namespace lcbc::kernels
