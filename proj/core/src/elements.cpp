#include "rdsm/elements.hpp"

#include "rdsm/errors.hpp"

#include <array>

namespace rdsm {
namespace {

struct ElementEntry {
    int z;
    const char* symbol;
    double covalent_radius; // Angstrom
    double mass;            // u
};

constexpr std::array<ElementEntry, 5> kElements{{
    {1, "H", 0.31, 1.008},
    {6, "C", 0.76, 12.011},
    {7, "N", 0.71, 14.007},
    {8, "O", 0.66, 15.999},
    {9, "F", 0.57, 18.998},
}};

const ElementEntry* find(int z) {
    for (const auto& e : kElements)
        if (e.z == z) return &e;
    return nullptr;
}

} // namespace

bool element_supported(int atomic_number) { return find(atomic_number) != nullptr; }

double covalent_radius(int atomic_number) {
    const ElementEntry* e = find(atomic_number);
    if (!e) throw Error("unsupported element Z=" + std::to_string(atomic_number));
    return e->covalent_radius;
}

double atomic_mass(int atomic_number) {
    const ElementEntry* e = find(atomic_number);
    if (!e) throw Error("unsupported element Z=" + std::to_string(atomic_number));
    return e->mass;
}

const std::string& element_symbol(int atomic_number) {
    static const std::array<std::string, 5> symbols{"H", "C", "N", "O", "F"};
    for (std::size_t i = 0; i < kElements.size(); ++i)
        if (kElements[i].z == atomic_number) return symbols[i];
    throw Error("unsupported element Z=" + std::to_string(atomic_number));
}

int atomic_number_of(const std::string& symbol) {
    for (const auto& e : kElements)
        if (symbol == e.symbol) return e.z;
    return 0;
}

} // namespace rdsm
