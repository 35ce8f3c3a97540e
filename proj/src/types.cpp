#include "nhse/types.hpp"

namespace nhse {

std::string to_string(Boundary b) {
    return b == Boundary::Open ? "open" : "periodic";
}

} // namespace nhse
