#include "sfft/window.hpp"

#include <limits>
#include <stdexcept>
#include <string>

namespace sfft {

std::string_view to_string(Window w) noexcept {
    return w == Window::signed_window ? "signed_window" : "unsigned_window";
}

Window window_from_string(std::string_view name) {
    if (name == "signed_window" || name == "signed") {
        return Window::signed_window;
    }
    if (name == "unsigned_window" || name == "unsigned") {
        return Window::unsigned_window;
    }
    throw std::invalid_argument("unknown frequency window '" + std::string(name) + "'");
}

FrequencyWindow::FrequencyWindow(std::uint64_t n, Window convention) : n_(n), convention_(convention) {
    if (n == 0 || n > static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max() / 2)) {
        throw std::invalid_argument("frequency window: size out of range");
    }
    if (convention == Window::signed_window) {
        highest_ = static_cast<std::int64_t>(n / 2);
        lowest_ = highest_ - static_cast<std::int64_t>(n) + 1;
    } else {
        lowest_ = 0;
        highest_ = static_cast<std::int64_t>(n) - 1;
    }
}

std::int64_t FrequencyWindow::frequency_at(std::uint64_t index) const noexcept {
    const auto i = static_cast<std::int64_t>(index);
    return i <= highest_ ? i : i - static_cast<std::int64_t>(n_);
}

std::uint64_t FrequencyWindow::index_of(std::int64_t omega) const {
    if (!contains(omega)) {
        throw std::out_of_range("frequency " + std::to_string(omega) + " outside the window");
    }
    return mod_floor(omega, n_);
}

std::optional<std::int64_t> FrequencyWindow::representative(u128 residue, u128 modulus) const {
    if (modulus == 0) {
        return std::nullopt;
    }
    const i128 m = static_cast<i128>(modulus);
    const i128 lo = lowest_;
    i128 shift = (static_cast<i128>(residue % modulus) - lo) % m;
    if (shift < 0) {
        shift += m;
    }
    const i128 first = lo + shift;
    if (first > highest_) {
        return std::nullopt;
    }
    if (first + m <= highest_) {
        return std::nullopt; // ambiguous
    }
    return static_cast<std::int64_t>(first);
}

} // namespace sfft
