#include "pseudofib/hopf.hpp"

namespace pseudofib {

std::string Fibration::total_name() const {
    if (kind == FibrationKind::ComplexToQuaternionic)
        return "CH^" + std::to_string(2 * m + 1) + "_" + std::to_string(2 * t + 1);
    return "H^" + std::to_string(total_dim()) + "_" + std::to_string(total_index());
}

std::string Fibration::base_name() const {
    if (kind == FibrationKind::RealToComplex)
        return "CH^" + std::to_string(m) + "_" + std::to_string(t);
    return "HH^" + std::to_string(m) + "_" + std::to_string(t);
}

}  // namespace pseudofib
