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

#include "shorsim/numth.h"

#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

namespace shorsim {

namespace {

uint64_t mul_mod(uint64_t a, uint64_t b, uint64_t m) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

}  // namespace

uint64_t mod_pow(uint64_t base, uint64_t exp, uint64_t modulus) {
    if (modulus < 2) {
        throw std::invalid_argument("mod_pow: modulus must be >= 2, got " + std::to_string(modulus));
    }
    uint64_t result = 1;
    base %= modulus;
    while (exp != 0) {
        if (exp & 1) {
            result = mul_mod(result, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    return result;
}

uint64_t gcd(uint64_t a, uint64_t b) {
    if (a == 0 && b == 0) {
        throw std::invalid_argument("gcd(0, 0) is undefined");
    }
    return std::gcd(a, b);
}

uint64_t find_order(uint64_t y, uint64_t n, uint64_t search_bound) {
    if (n < 2) {
        throw std::invalid_argument("find_order: modulus must be >= 2");
    }
    if (n > search_bound) {
        throw std::invalid_argument(
            "find_order: N=" + std::to_string(n) + " exceeds the search bound " + std::to_string(search_bound));
    }
    if (y == 0 || y >= n) {
        throw std::invalid_argument("find_order: base must lie in [1, N)");
    }
    uint64_t g = std::gcd(y, n);
    if (g != 1) {
        throw std::invalid_argument(
            "find_order: gcd(" + std::to_string(y) + ", " + std::to_string(n) + ") = " + std::to_string(g) +
            " is already a factor");
    }
    uint64_t power = y % n;
    for (uint64_t r = 1; r <= n; ++r) {
        if (power == 1) {
            return r;
        }
        power = mul_mod(power, y, n);
    }
    // Unreachable for coprime y: the order divides phi(n) < n.
    throw std::logic_error("find_order: no order found");
}

std::vector<Convergent> convergents(uint64_t c, uint64_t q) {
    if (q == 0 || c >= q) {
        throw std::invalid_argument("convergents: require 0 <= c < q");
    }
    std::vector<Convergent> out;
    uint64_t h_prev = 1, h_prev2 = 0;
    uint64_t k_prev = 0, k_prev2 = 1;
    uint64_t num = c, den = q;
    while (den != 0) {
        uint64_t a = num / den;
        uint64_t rem = num % den;
        num = den;
        den = rem;
        uint64_t h = a * h_prev + h_prev2;
        uint64_t k = a * k_prev + k_prev2;
        out.push_back({h, k});
        h_prev2 = h_prev;
        h_prev = h;
        k_prev2 = k_prev;
        k_prev = k;
    }
    return out;
}

std::optional<uint64_t> recover_order(uint64_t c, uint64_t q, uint64_t n, uint64_t y, uint64_t multiplier_bound) {
    std::optional<uint64_t> best;
    for (const auto &conv : convergents(c, q)) {
        uint64_t d = conv.denominator;
        if (d == 0 || d >= n) {
            continue;
        }
        for (uint64_t lambda = 1; lambda <= multiplier_bound; ++lambda) {
            uint64_t candidate = lambda * d;
            if (best && candidate >= *best) {
                break;
            }
            if (mod_pow(y, candidate, n) == 1) {
                best = candidate;
                break;
            }
        }
    }
    return best;
}

int popcount(uint64_t a) {
    return std::popcount(a);
}

unsigned register_width_for(uint64_t n) {
    auto square = static_cast<unsigned __int128>(n) * n;
    unsigned width = 0;
    while ((static_cast<unsigned __int128>(1) << width) < square) {
        ++width;
    }
    return width;
}

ShorInstance ShorInstance::from_number(
    uint64_t number, uint64_t base, uint64_t offset, std::optional<unsigned> num_qubits) {
    if (number < 3) {
        throw std::invalid_argument("N must be >= 3");
    }
    if (base < 2 || base >= number) {
        throw std::invalid_argument("y must lie in [2, N-1]");
    }
    if (std::gcd(base, number) != 1) {
        throw std::invalid_argument(
            "gcd(y, N) = " + std::to_string(std::gcd(base, number)) + " != 1; y must be coprime to N");
    }
    uint64_t order = find_order(base, number);
    unsigned width = num_qubits.value_or(register_width_for(number));
    ShorInstance inst = synthetic(width, order, offset);
    inst.number = number;
    inst.base = base;
    auto square = static_cast<unsigned __int128>(number) * number;
    inst.relaxed_register_size = !(square <= inst.dim && inst.dim <= 2 * square);
    return inst;
}

ShorInstance ShorInstance::synthetic(unsigned num_qubits, uint64_t order, uint64_t offset) {
    if (num_qubits == 0 || num_qubits > kMaxInstanceQubits) {
        throw std::invalid_argument("register width L must lie in [1, " + std::to_string(kMaxInstanceQubits) + "]");
    }
    ShorInstance inst;
    inst.num_qubits = num_qubits;
    inst.dim = uint64_t{1} << num_qubits;
    if (order == 0 || order > inst.dim) {
        throw std::invalid_argument("order r must lie in [1, q]");
    }
    if (offset >= order) {
        throw std::invalid_argument("offset l must lie in [0, r-1]");
    }
    inst.order = order;
    inst.offset = offset;
    inst.support = (inst.dim - 1 - offset) / order + 1;
    inst.relaxed_register_size = true;
    return inst;
}

}  // namespace shorsim
