#pragma once

#include <compare>
#include <cstdlib>
#include <vector>

namespace tvq {

// Edge colouring with colours stored doubled: doubled[e] = 2 * theta(e), in 0..r-2.
struct Colouring {
    std::vector<int> doubled;

    bool integer_valued() const {
        for (int c : doubled)
            if (c & 1)
                return false;
        return true;
    }

    friend bool operator==(const Colouring &, const Colouring &) = default;
    friend auto operator<=>(const Colouring &, const Colouring &) = default;
};

// Admissibility of a triangle with doubled colours (a, b, c) at level r: even sum,
// triangle inequalities, and a + b + c <= 2(r - 2).
constexpr bool admissible_doubled(int r, int a, int b, int c) {
    if (a < 0 || b < 0 || c < 0)
        return false;
    int sum = a + b + c;
    return (sum % 2 == 0) && a <= b + c && b <= a + c && c <= a + b && sum <= 2 * (r - 2);
}

} // namespace tvq
