#include "pseudofib/quaternion.hpp"

namespace pseudofib {

std::ostream& operator<<(std::ostream& os, Quat q) {
    return os << "(" << q.w << "," << q.x << "," << q.y << "," << q.z << ")";
}

}  // namespace pseudofib
