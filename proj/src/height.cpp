#include "cyheight/height.hpp"

#include "cyheight/errors.hpp"

namespace cyheight {

HeightValue HeightValue::finite(std::uint64_t h) {
    if (h == 0) throw InvalidInput("finite height must be >= 1");
    HeightValue v;
    v.value_ = h;
    return v;
}

std::string HeightValue::to_string() const { return value_ ? std::to_string(*value_) : "inf"; }

}  // namespace cyheight
