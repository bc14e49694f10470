#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "sfft/number_theory.hpp"

namespace sfft {

/// Which integers a length-N spectrum's indices stand for.
///
/// unsigned_window: frequencies [0, N).
/// signed_window:   frequencies (-ceil(N/2), floor(N/2)]; index i stands for
///                  i when i <= floor(N/2) and for i - N otherwise.
enum class Window { unsigned_window, signed_window };

[[nodiscard]] std::string_view to_string(Window w) noexcept;
[[nodiscard]] Window window_from_string(std::string_view name);

class FrequencyWindow {
public:
    FrequencyWindow(std::uint64_t n, Window convention);

    [[nodiscard]] std::uint64_t size() const noexcept { return n_; }
    [[nodiscard]] Window convention() const noexcept { return convention_; }
    [[nodiscard]] std::int64_t lowest() const noexcept { return lowest_; }
    [[nodiscard]] std::int64_t highest() const noexcept { return highest_; }

    [[nodiscard]] bool contains(std::int64_t omega) const noexcept {
        return omega >= lowest_ && omega <= highest_;
    }

    [[nodiscard]] std::int64_t frequency_at(std::uint64_t index) const noexcept;

    /// Storage index of a frequency inside the window.
    [[nodiscard]] std::uint64_t index_of(std::int64_t omega) const;

    /// The unique integer in the window congruent to `residue` mod `modulus`,
    /// or nothing when there is none or more than one.
    [[nodiscard]] std::optional<std::int64_t> representative(u128 residue, u128 modulus) const;

private:
    std::uint64_t n_;
    Window convention_;
    std::int64_t lowest_;
    std::int64_t highest_;
};

} // namespace sfft
