#include "qib/kernels.hpp"

#include <cstdlib>
#include <cstring>
#include <vector>

namespace qib::kernels {

const Ops* avx2_ops_if_supported();
const Ops* neon_ops_if_supported();

namespace {

std::vector<const Ops*> build_available() {
    std::vector<const Ops*> v{&scalar()};
    if (const Ops* o = avx2_ops_if_supported()) v.push_back(o);
    if (const Ops* o = neon_ops_if_supported()) v.push_back(o);
    return v;
}

const std::vector<const Ops*>& all() {
    static const std::vector<const Ops*> v = build_available();
    return v;
}

const Ops* pick_default() {
    const Ops* best = all().back();  // widest supported set
    if (const char* env = std::getenv("QIB_KERNELS")) {
        for (const Ops* o : all())
            if (std::strcmp(o->name, env) == 0) return o;
    }
    return best;
}

const Ops*& current() {
    static const Ops* cur = pick_default();
    return cur;
}

}  // namespace

const Ops& active() { return *current(); }

std::size_t available_count() { return all().size(); }

const Ops& available(std::size_t i) { return *all()[i]; }

bool force(std::string_view name) {
    for (const Ops* o : all()) {
        if (name == o->name) {
            current() = o;
            return true;
        }
    }
    return false;
}

}  // namespace qib::kernels
