#include "surprise/recommenders.hpp"

namespace surprise::rec {

Algorithm parse_algorithm(std::string_view name) {
    if (name == "knn") return Algorithm::knn;
    if (name == "msi") return Algorithm::msi;
    if (name == "lsi") return Algorithm::lsi;
    throw std::invalid_argument("unknown algorithm: " + std::string(name));
}

std::string_view algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::knn: return "knn";
        case Algorithm::msi: return "msi";
        case Algorithm::lsi: return "lsi";
    }
    return "?";
}

}  // namespace surprise::rec
