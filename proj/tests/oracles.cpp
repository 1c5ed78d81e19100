// Copyright 2026 The tempcorr Authors
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

#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <vector>

namespace oracle {

namespace {

constexpr double kPi = std::numbers::pi;

// <x| (x) <y| (cos t|00> + sin t|11>) for x-z plane +1 eigenvectors at
// Bloch angles x and y.
double amplitude(double t, double x, double y) {
    return std::cos(t) * std::cos(x / 2) * std::cos(y / 2) + std::sin(t) * std::sin(x / 2) * std::sin(y / 2);
}

// Bloch angle y whose +1 eigenvector nulls amplitude(t, x, y).
double null_partner(double t, double x) {
    return 2 * std::atan2(-std::cos(t) * std::cos(x / 2), std::sin(t) * std::sin(x / 2));
}

double paradox_value(double t, double alpha, double* zero_residual = nullptr) {
    double b0 = null_partner(t, alpha);
    double a1 = null_partner(t, b0 + kPi);  // nulls <a1+, b0->
    double b1 = null_partner(t, alpha + kPi);  // nulls <a0-, b1+>
    if (zero_residual != nullptr) {
        double r1 = amplitude(t, alpha, b0);
        double r2 = amplitude(t, a1, b0 + kPi);
        double r3 = amplitude(t, alpha + kPi, b1);
        *zero_residual = r1 * r1 + r2 * r2 + r3 * r3;
    }
    double a = amplitude(t, a1, b1);
    return a * a;
}

}  // namespace

Mat2 projector(const Vec3& n, int outcome) {
    const double v = outcome == 1 ? 1.0 : -1.0;
    Mat2 p;
    p[0][0] = 0.5 * (1 + v * n[2]);
    p[1][1] = 0.5 * (1 - v * n[2]);
    p[0][1] = 0.5 * v * C(n[0], -n[1]);
    p[1][0] = 0.5 * v * C(n[0], n[1]);
    return p;
}

Mat2 mul(const Mat2& a, const Mat2& b) {
    Mat2 out{};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k) out[i][j] += a[i][k] * b[k][j];
    return out;
}

C trace(const Mat2& a) { return a[0][0] + a[1][1]; }

Probs sequential(const Mat2& rho, const Vec3& a, const Vec3& b) {
    Probs p{};
    for (int r = 0; r < 2; ++r) {
        Mat2 pa = projector(a, r);
        Mat2 post = mul(mul(pa, rho), pa);
        for (int s = 0; s < 2; ++s) {
            p[r][s] = trace(mul(projector(b, s), post)).real();
        }
    }
    return p;
}

Probs spatial(const Mat4& rho4, const Vec3& a, const Vec3& b) {
    Probs p{};
    for (int r = 0; r < 2; ++r) {
        Mat2 pa = projector(a, r);
        for (int s = 0; s < 2; ++s) {
            Mat2 pb = projector(b, s);
            C acc = 0;
            // Tr(rho E) = sum_{ij} rho_ij E_ji, E_(2i1+i2)(2j1+j2) = pa_i1j1 pb_i2j2.
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) acc += rho4[i][j] * pa[j / 2][i / 2] * pb[j % 2][i % 2];
            p[r][s] = acc.real();
        }
    }
    return p;
}

double hardy_paradox_grid_max(int grid, int zooms) {
    double best = -1, bt = 0, ba = 0;
    for (int i = 0; i <= grid; ++i) {
        for (int j = 0; j <= grid; ++j) {
            double t = (kPi / 2) * i / grid;
            double a = 2 * kPi * j / grid;
            double v = paradox_value(t, a);
            if (v > best) {
                best = v, bt = t, ba = a;
            }
        }
    }
    double ht = kPi / 2 / grid, ha = 2 * kPi / grid;
    for (int z = 0; z < zooms; ++z) {
        double ct = bt, ca = ba;
        for (int i = -10; i <= 10; ++i) {
            for (int j = -10; j <= 10; ++j) {
                double t = ct + ht * i / 10, a = ca + ha * j / 10;
                double residual = 0;
                double v = paradox_value(t, a, &residual);
                if (residual < 1e-20 && v > best) {
                    best = v, bt = t, ba = a;
                }
            }
        }
        ht /= 5, ha /= 5;
    }
    return best;
}

double hardy_paradox_random_max(int samples, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0, 1);
    using V2 = std::array<C, 2>;
    auto unit2 = [&] {
        V2 v{C(g(rng), g(rng)), C(g(rng), g(rng))};
        double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        return V2{v[0] / n, v[1] / n};
    };
    // w with <w|c> = 0.
    auto perp = [](const V2& c) {
        V2 w{-std::conj(c[1]), std::conj(c[0])};
        double n = std::sqrt(std::norm(w[0]) + std::norm(w[1]));
        if (n < 1e-15) return V2{C(1), C(0)};
        return V2{w[0] / n, w[1] / n};
    };
    double best = 0;
    for (int it = 0; it < samples; ++it) {
        std::array<C, 4> psi;
        double n = 0;
        for (auto& x : psi) {
            x = C(g(rng), g(rng));
            n += std::norm(x);
        }
        for (auto& x : psi) x /= std::sqrt(n);
        // amp(u, w) = sum_ij conj(u_i) conj(w_j) psi_(2i+j).
        auto side_b = [&](const V2& u) {  // c_j = sum_i conj(u_i) psi_(2i+j)
            return V2{std::conj(u[0]) * psi[0] + std::conj(u[1]) * psi[2],
                      std::conj(u[0]) * psi[1] + std::conj(u[1]) * psi[3]};
        };
        auto side_a = [&](const V2& w) {
            return V2{std::conj(w[0]) * psi[0] + std::conj(w[1]) * psi[1],
                      std::conj(w[0]) * psi[2] + std::conj(w[1]) * psi[3]};
        };
        V2 a0p = unit2();
        V2 a0m{-std::conj(a0p[1]), std::conj(a0p[0])};
        V2 b0p = perp(side_b(a0p));
        V2 b0m{-std::conj(b0p[1]), std::conj(b0p[0])};
        V2 a1p = perp(side_a(b0m));
        V2 b1p = perp(side_b(a0m));
        V2 c = side_b(a1p);
        C amp = c[0] * std::conj(b1p[0]) + c[1] * std::conj(b1p[1]);
        best = std::max(best, std::norm(amp));
    }
    return best;
}

double hardy_unconstrained_grid_max(int grid) {
    // Half-angle cos/sin for outcome 1 (angle x) and outcome 0 (angle x + pi).
    std::vector<double> c1(grid), s1(grid), c0(grid), s0(grid);
    for (int i = 0; i < grid; ++i) {
        double h = kPi * i / grid;
        c1[i] = std::cos(h), s1[i] = std::sin(h);
        c0[i] = -s1[i], s0[i] = c1[i];
    }
    double best = -1;
    for (int i = 0; i <= grid; ++i) {
        double ct = std::cos((kPi / 2) * i / grid), st = std::sin((kPi / 2) * i / grid);
        auto p = [&](double cx, double sx, double cy, double sy) {
            double a = ct * cx * cy + st * sx * sy;
            return a * a;
        };
        for (int a0 = 0; a0 < grid; ++a0)
            for (int a1 = 0; a1 < grid; ++a1)
                for (int b0 = 0; b0 < grid; ++b0)
                    for (int b1 = 0; b1 < grid; ++b1) {
                        double h = p(c1[a1], s1[a1], c1[b1], s1[b1]) - p(c1[a0], s1[a0], c1[b0], s1[b0]) -
                                   p(c1[a1], s1[a1], c0[b0], s0[b0]) - p(c0[a0], s0[a0], c1[b1], s1[b1]);
                        best = std::max(best, h);
                    }
    }
    return best;
}

}  // namespace oracle
