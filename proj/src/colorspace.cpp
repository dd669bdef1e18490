#include "tintmark/colorspace.hpp"

#include <algorithm>
#include <cmath>

namespace tintmark {

namespace {

constexpr double kDegreesPerRadian = 180.0 / 3.14159265358979323846;

}  // namespace

double intensity(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    return (int{r} + int{g} + int{b}) / 3.0;
}

HsiPixel rgb_to_hsi(std::uint8_t r, std::uint8_t g, std::uint8_t b) {
    const int sum = int{r} + int{g} + int{b};
    const int lo = std::min({int{r}, int{g}, int{b}});

    HsiPixel out;
    out.i = sum / 3.0;
    out.s = sum == 0 ? 0.0 : 1.0 - 3.0 * lo / sum;

    const double rg = int{r} - int{g};
    const double rb = int{r} - int{b};
    const double gb = int{g} - int{b};
    const double denom = std::sqrt(rg * rg + rb * gb);
    if (denom == 0.0) {
        out.h = 0.0;  // achromatic: the angle is undefined
        return out;
    }
    const double cosine = std::clamp(0.5 * (rg + rb) / denom, -1.0, 1.0);
    const double theta = std::acos(cosine) * kDegreesPerRadian;
    out.h = b > g ? 360.0 - theta : theta;
    return out;
}

ChannelMask select_channels(std::uint8_t r, std::uint8_t g, std::uint8_t b, SelectionMode mode) {
    int cr = r, cg = g, cb = b;
    if (mode == SelectionMode::Stable) {
        cr &= ~1;
        cg &= ~1;
        cb &= ~1;
    }
    // 3*value >= sum is the integer form of value >= I with I = sum/3.
    const int sum = cr + cg + cb;
    ChannelMask mask;
    if (3 * cr >= sum) mask.insert(Channel::R);
    if (3 * cg >= sum) mask.insert(Channel::G);
    if (3 * cb >= sum) mask.insert(Channel::B);
    return mask;
}

}  // namespace tintmark
