// Copyright 2026 The shorsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SHORSIM_NUMTH_H
#define SHORSIM_NUMTH_H

#include <cstdint>
#include <optional>
#include <vector>

namespace shorsim {

/// Largest N accepted by brute-force order finding.
inline constexpr uint64_t kDefaultOrderSearchBound = uint64_t{1} << 20;

/// Default number of multiples tried per convergent denominator in recover_order.
inline constexpr uint64_t kDefaultMultiplierBound = 64;

/// Largest first-register width a ShorInstance may describe (q <= 2^41).
inline constexpr unsigned kMaxInstanceQubits = 41;

/// base^exp mod modulus by square-and-multiply. Throws std::invalid_argument if modulus < 2.
uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t modulus);

/// Greatest common divisor. gcd(0, 0) is rejected.
uint64_t gcd(uint64_t a, uint64_t b);

/// Smallest r >= 1 with y^r = 1 (mod n), found by stepping through powers of y.
///
/// Throws std::invalid_argument when y is not coprime to n (gcd(y, n) is then
/// already a factor), when y is outside [1, n), or when n exceeds `search_bound`.
uint64_t find_order(uint64_t y, uint64_t n, uint64_t search_bound = kDefaultOrderSearchBound);

struct Convergent {
    uint64_t numerator;
    uint64_t denominator;
    bool operator==(const Convergent &) const = default;
};

/// Continued-fraction convergents of c/q, lowest terms, by non-decreasing
/// denominator. The last entry is c/q reduced.
std::vector<Convergent> convergents(uint64_t c, uint64_t q);

/// Classical post-processing of a measured value c.
///
/// Every convergent denominator d < n is multiplied by lambda = 1..multiplier_bound,
/// and the least candidate v = lambda * d with y^v = 1 (mod n) is returned.
/// Returns nullopt when no candidate qualifies.
std::optional<uint64_t> recover_order(
    uint64_t c, uint64_t q, uint64_t n, uint64_t y, uint64_t multiplier_bound = kDefaultMultiplierBound);

int popcount(uint64_t a);

/// Parameters of one order-finding run: the number to factor, the base, the
/// first register size q = 2^L, the order r of the base and the offset l left
/// by measuring the second register.
///
/// Synthetic instances carry only (L, r, l) and have number == base == 0.
struct ShorInstance {
    uint64_t number = 0;
    uint64_t base = 0;
    unsigned num_qubits = 0;
    uint64_t dim = 0;
    uint64_t order = 0;
    uint64_t offset = 0;
    /// M = floor((q - 1 - l) / r) + 1, the count of a in [0, q) with a = l (mod r).
    uint64_t support = 0;
    /// True when q lies outside [N^2, 2 N^2] (explicit register width or synthetic).
    bool relaxed_register_size = false;

    /// Builds the instance for factoring `number` with base `base`.
    ///
    /// Without `num_qubits`, L is the smallest width with 2^L >= N^2.
    static ShorInstance from_number(
        uint64_t number, uint64_t base, uint64_t offset = 0, std::optional<unsigned> num_qubits = std::nullopt);

    /// Builds an instance from register width, order and offset directly.
    static ShorInstance synthetic(unsigned num_qubits, uint64_t order, uint64_t offset = 0);

    bool has_number() const {
        return number != 0;
    }
    bool order_divides_dim() const {
        return dim % order == 0;
    }
    /// Basis value of the j-th support element, j*r + l.
    uint64_t support_value(uint64_t j) const {
        return j * order + offset;
    }
};

/// Smallest L with 2^L >= n^2.
unsigned register_width_for(uint64_t n);

}  // namespace shorsim

#endif
