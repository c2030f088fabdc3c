#include "qc/order.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace qc {

namespace {

// ---------------------------------------------------------------- HNF ----

void swap_rows(std::vector<Elem>& rows, size_t i, size_t j) { std::swap(rows[i], rows[j]); }

void addmul_row(Elem& dst, const Elem& src, const Int& c) {
    for (int k = 0; k < 3; ++k) dst[k] += c * src[k];
}

}  // namespace

IdealLat hnf_from_rows(std::vector<Elem> rows) {
    // integer row echelon, pivots on coordinates 0,1,2
    size_t top = 0;
    for (int col = 0; col < 3 && top < rows.size(); ++col) {
        // gather gcd at this column below `top`
        while (true) {
            size_t piv = rows.size();
            for (size_t i = top; i < rows.size(); ++i) {
                if (rows[i][col] != 0 && (piv == rows.size() ||
                                          abs(rows[i][col]) < abs(rows[piv][col])))
                    piv = i;
            }
            if (piv == rows.size()) break;  // column is zero below top
            swap_rows(rows, top, piv);
            bool reduced_all = true;
            for (size_t i = top + 1; i < rows.size(); ++i) {
                if (rows[i][col] != 0) {
                    Int q = rows[i][col] / rows[top][col];
                    addmul_row(rows[i], rows[top], -q);
                    if (rows[i][col] != 0) reduced_all = false;
                }
            }
            if (reduced_all) {
                ++top;
                break;
            }
        }
    }
    rows.resize(3);
    IdealLat L;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) L.h[i][j] = rows[i][j];
    for (int i = 0; i < 3; ++i) {
        if (L.h[i][i] == 0) throw std::logic_error("hnf: rank-deficient lattice");
        if (L.h[i][i] < 0)
            for (int j = 0; j < 3; ++j) L.h[i][j] = -L.h[i][j];
    }
    // reduce entries above each pivot
    for (int i = 2; i >= 1; --i) {
        for (int r = 0; r < i; ++r) {
            Int a = L.h[r][i], d = L.h[i][i];
            Int q = a >= 0 ? Int(a / d) : Int(-Int((-a + d - 1) / d));
            if (q != 0)
                for (int j = 0; j < 3; ++j) L.h[r][j] -= q * L.h[i][j];
        }
    }
    return L;
}

bool IdealLat::operator==(const IdealLat& o) const {
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (h[i][j] != o.h[i][j]) return false;
    return true;
}

bool IdealLat::contains(const Elem& v) const {
    Int r0 = v[0], r1 = v[1], r2 = v[2];
    if (r0 % h[0][0] != 0) return false;
    Int c0 = r0 / h[0][0];
    r1 -= c0 * h[0][1];
    r2 -= c0 * h[0][2];
    if (r1 % h[1][1] != 0) return false;
    Int c1 = r1 / h[1][1];
    r2 -= c1 * h[1][2];
    return r2 % h[2][2] == 0;
}

// ------------------------------------------------------------ CubicOrder --

namespace {

// product of two power-basis polynomials reduced mod g  (degree <= 2 out)
std::array<Int, 3> polymul_mod_g(const std::array<Int, 3>& u, const std::array<Int, 3>& v,
                                 const std::array<Int, 4>& g) {
    Int c[5] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) c[i + j] += u[i] * v[j];
    // reduce: x^3 = -g2 x^2 - g1 x - g0 ; x^4 = -g2 x^3 - g1 x^2 - g0 x
    for (int d = 4; d >= 3; --d) {
        Int t = c[d];
        if (t == 0) continue;
        c[d] = 0;
        c[d - 1] -= t * g[2];
        c[d - 2] -= t * g[1];
        c[d - 3] -= t * g[0];
    }
    return {c[0], c[1], c[2]};
}

Int cubic_disc(const std::array<Int, 4>& g) {
    const Int &c = g[0], &b = g[1], &a = g[2];
    return 18 * a * b * c - 4 * a * a * a * c + a * a * b * b - 4 * b * b * b - 27 * c * c;
}

struct Mat3I {
    Int m[3][3];
};

Int det3(const Mat3I& A) {
    return A.m[0][0] * (A.m[1][1] * A.m[2][2] - A.m[1][2] * A.m[2][1]) -
           A.m[0][1] * (A.m[1][0] * A.m[2][2] - A.m[1][2] * A.m[2][0]) +
           A.m[0][2] * (A.m[1][0] * A.m[2][1] - A.m[1][1] * A.m[2][0]);
}

Mat3I adj3(const Mat3I& A) {
    Mat3I B;
    B.m[0][0] = A.m[1][1] * A.m[2][2] - A.m[1][2] * A.m[2][1];
    B.m[0][1] = -(A.m[0][1] * A.m[2][2] - A.m[0][2] * A.m[2][1]);
    B.m[0][2] = A.m[0][1] * A.m[1][2] - A.m[0][2] * A.m[1][1];
    B.m[1][0] = -(A.m[1][0] * A.m[2][2] - A.m[1][2] * A.m[2][0]);
    B.m[1][1] = A.m[0][0] * A.m[2][2] - A.m[0][2] * A.m[2][0];
    B.m[1][2] = -(A.m[0][0] * A.m[1][2] - A.m[0][2] * A.m[1][0]);
    B.m[2][0] = A.m[1][0] * A.m[2][1] - A.m[1][1] * A.m[2][0];
    B.m[2][1] = -(A.m[0][0] * A.m[2][1] - A.m[0][1] * A.m[2][0]);
    B.m[2][2] = A.m[0][0] * A.m[1][1] - A.m[0][1] * A.m[1][0];
    return B;
}

// Module state during maximal-order construction: rows/den over power basis.
struct ModuleState {
    std::array<std::array<Int, 3>, 3> rows;
    Int den;
};

// HNF with pivots on the highest coordinate first, so the final basis can be
// rearranged to start with 1.
ModuleState module_hnf(std::vector<std::array<Int, 3>> gens, Int den) {
    // echelon from the right: pivot coords 2, then 1, then 0
    size_t top = 0;
    for (int col = 2; col >= 0 && top < gens.size(); --col) {
        while (true) {
            size_t piv = gens.size();
            for (size_t i = top; i < gens.size(); ++i)
                if (gens[i][col] != 0 &&
                    (piv == gens.size() || abs(gens[i][col]) < abs(gens[piv][col])))
                    piv = i;
            if (piv == gens.size()) break;
            std::swap(gens[top], gens[piv]);
            bool done = true;
            for (size_t i = top + 1; i < gens.size(); ++i) {
                if (gens[i][col] != 0) {
                    Int q = gens[i][col] / gens[top][col];
                    for (int k = 0; k < 3; ++k) gens[i][k] -= q * gens[top][k];
                    if (gens[i][col] != 0) done = false;
                }
            }
            if (done) {
                ++top;
                break;
            }
        }
    }
    if (top != 3) throw std::logic_error("module rank < 3");
    gens.resize(3);
    // gens[0] has pivot at coord 2, gens[2] has pivot at coord 0 (a rational)
    // order as (constant row, theta row, theta^2 row)
    std::array<std::array<Int, 3>, 3> rows = {gens[2], gens[1], gens[0]};
    for (int i = 0; i < 3; ++i)
        if (rows[i][i] < 0)
            for (int k = 0; k < 3; ++k) rows[i][k] = -rows[i][k];
    // lower-triangular: reduce sub-diagonal entries (keeps entries small)
    for (int i = 1; i < 3; ++i)
        for (int j = 0; j < i; ++j) {
            Int a = rows[i][j], d = rows[j][j];
            Int q = a >= 0 ? Int(a / d) : Int(-Int((-a + d - 1) / d));
            if (q != 0)
                for (int k = 0; k < 3; ++k) rows[i][k] -= q * rows[j][k];
        }
    // normalize common content with den
    Int g = den;
    for (auto& r : rows)
        for (auto& x : r) g = int_gcd(g, x);
    if (g > 1) {
        den /= g;
        for (auto& r : rows)
            for (auto& x : r) x /= g;
    }
    return {rows, den};
}

}  // namespace

CubicOrder::CubicOrder(long long conductor, const std::array<Int, 4>& cubic)
    : f_(conductor), g_(cubic) {
    if (g_[3] != 1) throw std::invalid_argument("defining cubic must be monic");
    // irreducibility over Q: no rational (hence integer) root
    {
        auto eval = [&](const Int& x) { return ((x + g_[2]) * x + g_[1]) * x + g_[0]; };
        std::vector<Int> cands{1, -1};
        if (g_[0] != 0)
            for (const auto& [p, e] : factor_int(abs(g_[0]))) {
                (void)e;
                cands.push_back(p);
                cands.push_back(-p);
                cands.push_back(abs(g_[0]));
                cands.push_back(-abs(g_[0]));
            }
        for (const auto& r : cands)
            if (eval(r) == 0) throw std::invalid_argument("defining cubic is reducible");
    }

    Int target = Int(f_) * f_;
    Int dg = cubic_disc(g_);
    if (dg <= 0) throw std::invalid_argument("defining cubic is not totally real cyclic");

    // power-basis traces p0..p4 via Newton's identities
    const Int &a = g_[2], &b = g_[1], &c0 = g_[0];
    Int p[5];
    p[0] = 3;
    p[1] = -a;
    p[2] = a * a - 2 * b;
    p[3] = -a * a * a + 3 * a * b - 3 * c0;
    p[4] = a * a * a * a - 4 * a * a * b + 4 * a * c0 + 2 * b * b;

    ModuleState st;
    st.rows = {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
    st.den = 1;

    auto module_disc = [&](const ModuleState& m) -> Rat {
        Mat3I T;  // trace form over power basis
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                // Tr(x^i x^j) needs reduction for i+j >= 3; p[] already holds
                // the reduced power traces
                T.m[i][j] = p[i + j];
            }
        // disc = det(B T B^t) / den^6
        Mat3I BT{}, M{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                BT.m[i][j] = 0;
                for (int k = 0; k < 3; ++k) BT.m[i][j] += m.rows[i][k] * T.m[k][j];
            }
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) {
                M.m[i][j] = 0;
                for (int k = 0; k < 3; ++k) M.m[i][j] += BT.m[i][k] * m.rows[j][k];
            }
        Rat d(det3(M));
        Rat den6 = Rat(int_pow(m.den, 6));
        return d / den6;
    };

    // multiplication: w_i w_j expressed back in the module basis; fails if
    // the module is not multiplicatively closed, returning the offending
    // product for the closure loop.
    auto try_close = [&](ModuleState& m) -> bool {
        Mat3I B{};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) B.m[i][j] = m.rows[i][j];
        Int detB = det3(B);
        Mat3I adjB = adj3(B);
        bool closed = true;
        std::vector<std::array<Int, 3>> extra;
        for (int i = 0; i < 3 && closed; ++i)
            for (int j = i; j < 3 && closed; ++j) {
                auto prod = polymul_mod_g(m.rows[i], m.rows[j], g_);  // /den^2
                // coords = prod * adjB / (detB) * den / den^2 → prod*adjB*? solve x B = prod/den
                // x = prod * B^{-1} / den = prod * adjB / (detB * den)
                for (int k = 0; k < 3; ++k) {
                    Int num = 0;
                    for (int l = 0; l < 3; ++l) num += prod[l] * adjB.m[l][k];
                    if (num % (detB * m.den) != 0) {
                        closed = false;
                        extra.push_back(prod);  // power coords / den^2
                        break;
                    }
                }
            }
        if (closed) return true;
        // enlarge: common denominator den^2
        std::vector<std::array<Int, 3>> gens;
        for (const auto& r : m.rows)
            gens.push_back({r[0] * m.den, r[1] * m.den, r[2] * m.den});  // /den^2
        for (const auto& e : extra) gens.push_back(e);
        ModuleState ns = module_hnf(gens, m.den * m.den);
        m = ns;
        return false;
    };

    auto charpoly_in = [&](const ModuleState& m, const std::array<Int, 3>& xpow,
                           const Int& xden) -> std::array<Rat, 3> {
        // char poly of element given in power coords xpow/xden, using the
        // power-basis multiplication (independent of module closure)
        // multiplication matrix on power basis
        Mat3I M{};
        std::array<Int, 3> cols[3];
        (void)m;
        cols[0] = xpow;
        cols[1] = polymul_mod_g(xpow, {0, 1, 0}, g_);
        cols[2] = polymul_mod_g(xpow, {0, 0, 1}, g_);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) M.m[i][j] = cols[j][i];
        Rat t1 = Rat(M.m[0][0] + M.m[1][1] + M.m[2][2]) / xden;
        Rat t2 = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                t2 += Rat(M.m[i][i] * M.m[j][j] - M.m[i][j] * M.m[j][i]);
        t2 /= Rat(xden) * xden;
        Rat t3 = Rat(det3(M)) / (Rat(xden) * xden * xden);
        return {t1, t2, t3};  // trace, 2nd sym, det
    };

    // refinement loop
    for (int rounds = 0; rounds < 64; ++rounds) {
        while (!try_close(st)) {
        }
        Rat d = module_disc(st);
        if (boost::multiprecision::denominator(d) != 1)
            throw std::logic_error("module disc not integral");
        Int dn = boost::multiprecision::numerator(d);
        if (dn == target) break;
        if (dn < target || dn % target != 0)
            throw std::runtime_error("integral basis certification failed: disc mismatch");
        Int idx2 = dn / target;
        Int idx;
        if (!is_perfect_square(idx2, &idx))
            throw std::runtime_error("integral basis certification failed: index not square");
        // enlarge at the smallest prime dividing the index
        Int ell = factor_int(idx).front().first;
        long long l = to_ll(ell);
        bool found = false;
        for (long long x0 = 0; x0 < l && !found; ++x0)
            for (long long x1 = 0; x1 < l && !found; ++x1)
                for (long long x2 = 0; x2 < l && !found; ++x2) {
                    if (x0 == 0 && x1 == 0 && x2 == 0) continue;
                    // v = (x0 w0 + x1 w1 + x2 w2)/ell ; integral iff charpoly integral
                    std::array<Int, 3> xpow{};
                    for (int k = 0; k < 3; ++k)
                        xpow[k] = x0 * st.rows[0][k] + x1 * st.rows[1][k] + x2 * st.rows[2][k];
                    auto cp = charpoly_in(st, xpow, st.den * ell);
                    if (boost::multiprecision::denominator(cp[0]) == 1 &&
                        boost::multiprecision::denominator(cp[1]) == 1 &&
                        boost::multiprecision::denominator(cp[2]) == 1) {
                        std::vector<std::array<Int, 3>> gens;
                        for (const auto& r : st.rows)
                            gens.push_back({r[0] * ell, r[1] * ell, r[2] * ell});
                        gens.push_back(xpow);
                        st = module_hnf(gens, st.den * ell);
                        found = true;
                    }
                }
        if (!found)
            throw std::runtime_error("integral basis certification failed: no enlargement at index prime");
    }

    {
        Rat d = module_disc(st);
        if (boost::multiprecision::denominator(d) != 1 ||
            boost::multiprecision::numerator(d) != target)
            throw std::runtime_error("integral basis certification failed (final)");
        disc_ = target;
    }

    // force w0 = 1 exactly
    if (!(st.rows[0][0] == st.den && st.rows[0][1] == 0 && st.rows[0][2] == 0))
        throw std::logic_error("basis does not start with 1");
    basis_ = st.rows;
    den_ = st.den;

    build_mul_table();

    // numeric roots of g (totally real; trig solve + Newton polish)
    {
        hpreal A = to_real(g_[2]), B = to_real(g_[1]), C = to_real(g_[0]);
        hpreal pdep = B - A * A / 3;
        hpreal qdep = 2 * A * A * A / 27 - A * B / 3 + C;
        hpreal m2 = 2 * std::sqrt(-pdep / 3);
        hpreal arg = std::clamp(3 * qdep / (pdep * m2), -1.0L, 1.0L);
        hpreal phi = std::acos(arg);
        for (int k = 0; k < 3; ++k)
            theta_[k] = m2 * std::cos((phi + 2 * std::numbers::pi_v<hpreal> * k) / 3) - A / 3;
        std::sort(theta_.begin(), theta_.end());
        for (auto& t : theta_) {
            for (int it = 0; it < 4; ++it) {
                hpreal val = ((t + A) * t + B) * t + C;
                hpreal der = (3 * t + 2 * A) * t + B;
                t -= val / der;
            }
        }
        for (int k = 0; k < 3; ++k)
            for (int i = 0; i < 3; ++i)
                emb_[k][i] = (to_real(basis_[i][0]) + to_real(basis_[i][1]) * theta_[k] +
                              to_real(basis_[i][2]) * theta_[k] * theta_[k]) /
                             to_real(den_);
        // 3x3 inverse
        hpreal det = emb_[0][0] * (emb_[1][1] * emb_[2][2] - emb_[1][2] * emb_[2][1]) -
                     emb_[0][1] * (emb_[1][0] * emb_[2][2] - emb_[1][2] * emb_[2][0]) +
                     emb_[0][2] * (emb_[1][0] * emb_[2][1] - emb_[1][1] * emb_[2][0]);
        auto cof = [&](int i, int j) {
            int i1 = (i + 1) % 3, i2 = (i + 2) % 3, j1 = (j + 1) % 3, j2 = (j + 2) % 3;
            return emb_[i1][j1] * emb_[i2][j2] - emb_[i1][j2] * emb_[i2][j1];
        };
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) emb_inv_[i][j] = cof(j, i) / det;
    }

    // Galois generator: sigma(theta) is another root of g; reconstruct its
    // integer coordinates from embeddings and verify exactly.
    {
        Elem th = theta_elem();
        bool ok = false;
        for (int variant = 0; variant < 2 && !ok; ++variant) {
            // permutation candidates: k -> k+1 or k -> k+2 on the sorted roots
            std::array<hpreal, 3> target_emb{};
            for (int k = 0; k < 3; ++k) target_emb[k] = theta_[(k + 1 + variant) % 3];
            Elem cand = round_from_embedding(target_emb);
            auto cp = charpoly(cand);
            if (cp == g_) {
                bool is_theta = (cand == th);
                if (is_theta) continue;
                // sigma(w_i) = B_i(sigma theta)/den, must be integral
                bool good = true;
                std::array<std::array<Int, 3>, 3> sg{};
                for (int i = 0; i < 3 && good; ++i) {
                    Elem v = from_int(basis_[i][0]);
                    Elem t1 = mul_scalar(cand, basis_[i][1]);
                    Elem t2 = mul_scalar(mul(cand, cand), basis_[i][2]);
                    v = add(v, add(t1, t2));
                    for (int k = 0; k < 3; ++k) {
                        if (v[k] % den_ != 0) {
                            good = false;
                            break;
                        }
                        sg[i][k] = v[k] / den_;
                    }
                }
                if (!good) continue;
                sigma_ = sg;
                // verify sigma^3 = id
                Elem e1{0, 1, 0}, e2{0, 0, 1};
                Elem s1 = sigma(sigma(sigma(e1)));
                Elem s2 = sigma(sigma(sigma(e2)));
                if (s1 == e1 && s2 == e2 && !(sigma(e1) == e1 && sigma(e2) == e2)) ok = true;
            }
        }
        if (!ok) throw std::runtime_error("failed to construct Galois action");
    }
}

void CubicOrder::build_mul_table() {
    Mat3I B{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B.m[i][j] = basis_[i][j];
    Int detB = det3(B);
    Mat3I adjB = adj3(B);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            auto prod = polymul_mod_g(basis_[i], basis_[j], g_);
            for (int k = 0; k < 3; ++k) {
                Int num = 0;
                for (int l = 0; l < 3; ++l) num += prod[l] * adjB.m[l][k];
                Int den = detB * den_;
                if (num % den != 0) throw std::logic_error("order not multiplicatively closed");
                table_[i][j][k] = num / den;
            }
        }
}

Elem CubicOrder::add(const Elem& x, const Elem& y) const {
    return {x[0] + y[0], x[1] + y[1], x[2] + y[2]};
}
Elem CubicOrder::sub(const Elem& x, const Elem& y) const {
    return {x[0] - y[0], x[1] - y[1], x[2] - y[2]};
}
Elem CubicOrder::neg(const Elem& x) const { return {-x[0], -x[1], -x[2]}; }

Elem CubicOrder::mul(const Elem& x, const Elem& y) const {
    Elem r{0, 0, 0};
    for (int i = 0; i < 3; ++i) {
        if (x[i] == 0) continue;
        for (int j = 0; j < 3; ++j) {
            if (y[j] == 0) continue;
            Int c = x[i] * y[j];
            for (int k = 0; k < 3; ++k)
                if (table_[i][j][k] != 0) r[k] += c * table_[i][j][k];
        }
    }
    return r;
}

Elem CubicOrder::mul_scalar(const Elem& x, const Int& c) const {
    return {x[0] * c, x[1] * c, x[2] * c};
}

Elem CubicOrder::pow(Elem x, unsigned e) const {
    Elem r = one();
    while (e) {
        if (e & 1u) r = mul(r, x);
        x = mul(x, x);
        e >>= 1u;
    }
    return r;
}

std::array<Int, 4> CubicOrder::charpoly(const Elem& x) const {
    // multiplication matrix: columns are coords of x * w_j
    Mat3I M{};
    for (int j = 0; j < 3; ++j) {
        Elem col{0, 0, 0};
        for (int i = 0; i < 3; ++i) {
            if (x[i] == 0) continue;
            for (int k = 0; k < 3; ++k) col[k] += x[i] * table_[i][j][k];
        }
        for (int k = 0; k < 3; ++k) M.m[k][j] = col[k];
    }
    Int t1 = M.m[0][0] + M.m[1][1] + M.m[2][2];
    Int t2 = 0;
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) t2 += M.m[i][i] * M.m[j][j] - M.m[i][j] * M.m[j][i];
    Int t3 = det3(M);
    // char poly x^3 - t1 x^2 + t2 x - t3
    return {-t3, t2, -t1, 1};
}

Int CubicOrder::norm(const Elem& x) const {
    auto cp = charpoly(x);
    return -cp[0];
}

Int CubicOrder::trace(const Elem& x) const {
    auto cp = charpoly(x);
    return -cp[2];
}

bool CubicOrder::divides(const Elem& d, const Elem& x) const {
    Int nd = norm(d);
    if (nd == 0) return false;
    Mat3I M{};
    for (int j = 0; j < 3; ++j) {
        Elem col{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) col[k] += d[i] * table_[i][j][k];
        for (int k = 0; k < 3; ++k) M.m[k][j] = col[k];
    }
    Mat3I A = adj3(M);
    for (int k = 0; k < 3; ++k) {
        Int num = 0;
        for (int l = 0; l < 3; ++l) num += A.m[k][l] * x[l];
        if (num % nd != 0) return false;
    }
    return true;
}

Elem CubicOrder::div_exact(const Elem& x, const Elem& d) const {
    Int nd = norm(d);
    if (nd == 0) throw std::domain_error("division by zero element");
    Mat3I M{};
    for (int j = 0; j < 3; ++j) {
        Elem col{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) col[k] += d[i] * table_[i][j][k];
        for (int k = 0; k < 3; ++k) M.m[k][j] = col[k];
    }
    Mat3I A = adj3(M);
    Elem out;
    for (int k = 0; k < 3; ++k) {
        Int num = 0;
        for (int l = 0; l < 3; ++l) num += A.m[k][l] * x[l];
        if (num % nd != 0) throw std::domain_error("element division is not exact");
        out[k] = num / nd;
    }
    return out;
}

Elem CubicOrder::sigma(const Elem& x) const {
    Elem r{0, 0, 0};
    for (int i = 0; i < 3; ++i)
        for (int k = 0; k < 3; ++k) r[k] += x[i] * sigma_[i][k];
    return r;
}

Elem CubicOrder::sigma_pow(Elem x, int k) const {
    k = ((k % 3) + 3) % 3;
    for (int i = 0; i < k; ++i) x = sigma(x);
    return x;
}

std::array<hpreal, 3> CubicOrder::embed(const Elem& x) const {
    std::array<hpreal, 3> out{};
    for (int k = 0; k < 3; ++k)
        out[k] = to_real(x[0]) * emb_[k][0] + to_real(x[1]) * emb_[k][1] +
                 to_real(x[2]) * emb_[k][2];
    return out;
}

Elem CubicOrder::theta_elem() const {
    // solve c * basis = (0,1,0) * den
    Mat3I B{};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) B.m[i][j] = basis_[i][j];
    Int detB = det3(B);
    Mat3I A = adj3(B);
    Elem out;
    for (int k = 0; k < 3; ++k) {
        Int num = den_ * A.m[1][k];
        if (num % detB != 0) throw std::logic_error("theta not in order");
        out[k] = num / detB;
    }
    return out;
}

Elem CubicOrder::round_from_embedding(const std::array<hpreal, 3>& y) const {
    Elem out;
    for (int i = 0; i < 3; ++i) {
        hpreal c = emb_inv_[i][0] * y[0] + emb_inv_[i][1] * y[1] + emb_inv_[i][2] * y[2];
        out[i] = Int(llroundl(c));
    }
    return out;
}

std::optional<Elem> CubicOrder::kth_root(const Elem& x, int k) const {
    auto e = embed(x);
    if (k % 2 == 0)
        for (auto v : e)
            if (v < 0) return std::nullopt;
    auto realroot = [&](hpreal v) {
        return v >= 0 ? std::pow(v, 1.0L / k) : -std::pow(-v, 1.0L / k);
    };
    std::array<hpreal, 3> r{realroot(e[0]), realroot(e[1]), realroot(e[2])};
    int signpatterns = (k % 2 == 0) ? 4 : 1;
    for (int s = 0; s < signpatterns; ++s) {
        std::array<hpreal, 3> y = r;
        if (s & 1) y[1] = -y[1];
        if (s & 2) y[2] = -y[2];
        Elem cand = round_from_embedding(y);
        if (pow(cand, static_cast<unsigned>(k)) == x) return cand;
        Elem cneg = neg(cand);
        if (pow(cneg, static_cast<unsigned>(k)) == x) return cneg;
    }
    return std::nullopt;
}

IdealLat CubicOrder::whole_ring() const {
    std::vector<Elem> rows{{Int(1), Int(0), Int(0)},
                           {Int(0), Int(1), Int(0)},
                           {Int(0), Int(0), Int(1)}};
    return hnf_from_rows(rows);
}

IdealLat CubicOrder::principal(const Elem& x) const {
    std::vector<Elem> rows;
    for (int j = 0; j < 3; ++j) {
        Elem col{0, 0, 0};
        for (int i = 0; i < 3; ++i)
            for (int k = 0; k < 3; ++k) col[k] += x[i] * table_[i][j][k];
        rows.push_back(col);
    }
    return hnf_from_rows(rows);
}

IdealLat CubicOrder::mul(const IdealLat& a, const IdealLat& b) const {
    std::vector<Elem> rows;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            Elem u{a.h[i][0], a.h[i][1], a.h[i][2]};
            Elem v{b.h[j][0], b.h[j][1], b.h[j][2]};
            rows.push_back(mul(u, v));
        }
    return hnf_from_rows(rows);
}

IdealLat CubicOrder::mul(const IdealLat& a, const Elem& x) const {
    std::vector<Elem> rows;
    for (int i = 0; i < 3; ++i) {
        Elem u{a.h[i][0], a.h[i][1], a.h[i][2]};
        rows.push_back(mul(u, x));
    }
    return hnf_from_rows(rows);
}

IdealLat CubicOrder::pow(const IdealLat& a, unsigned e) const {
    IdealLat r = whole_ring();
    IdealLat base = a;
    while (e) {
        if (e & 1u) r = mul(r, base);
        if (e >>= 1u) base = mul(base, base);
    }
    return r;
}

IdealLat CubicOrder::scale(const IdealLat& a, const Int& c) const {
    std::vector<Elem> rows;
    for (int i = 0; i < 3; ++i) rows.push_back(Elem{a.h[i][0] * c, a.h[i][1] * c, a.h[i][2] * c});
    return hnf_from_rows(rows);
}

std::vector<Elem> CubicOrder::short_vectors(const IdealLat& L, int count) const {
    // float LLL on the embedding Gram form, then a small exhaustive box
    std::array<Elem, 3> bs;
    for (int i = 0; i < 3; ++i) bs[i] = Elem{L.h[i][0], L.h[i][1], L.h[i][2]};
    auto vec = [&](const Elem& x) { return embed(x); };
    auto dot = [&](const std::array<hpreal, 3>& u, const std::array<hpreal, 3>& v) {
        return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
    };
    bool changed = true;
    for (int iter = 0; iter < 200 && changed; ++iter) {
        changed = false;
        // size reduction
        for (int i = 1; i < 3; ++i)
            for (int j = i - 1; j >= 0; --j) {
                auto vi = vec(bs[i]), vj = vec(bs[j]);
                hpreal mu = dot(vi, vj) / dot(vj, vj);
                long long q = llroundl(mu);
                if (q != 0) {
                    for (int k = 0; k < 3; ++k) bs[i][k] -= Int(q) * bs[j][k];
                    changed = true;
                }
            }
        // order by length
        for (int i = 0; i < 2; ++i) {
            if (dot(vec(bs[i + 1]), vec(bs[i + 1])) < dot(vec(bs[i]), vec(bs[i]))) {
                std::swap(bs[i], bs[i + 1]);
                changed = true;
            }
        }
    }
    std::vector<std::pair<Int, Elem>> cands;
    int r = 2;
    while (true) {
        cands.clear();
        for (int c0 = -r; c0 <= r; ++c0)
            for (int c1 = -r; c1 <= r; ++c1)
                for (int c2 = -r; c2 <= r; ++c2) {
                    if (c0 == 0 && c1 == 0 && c2 == 0) continue;
                    if (c0 < 0 || (c0 == 0 && c1 < 0) || (c0 == 0 && c1 == 0 && c2 < 0))
                        continue;  // dedupe +-
                    Elem x{};
                    for (int k = 0; k < 3; ++k)
                        x[k] = Int(c0) * bs[0][k] + Int(c1) * bs[1][k] + Int(c2) * bs[2][k];
                    cands.emplace_back(abs(norm(x)), x);
                }
        std::sort(cands.begin(), cands.end(),
                  [](const auto& u, const auto& v) { return u.first < v.first; });
        if (static_cast<int>(cands.size()) >= count || r >= 6) break;
        ++r;
    }
    std::vector<Elem> out;
    for (const auto& [n, x] : cands) {
        out.push_back(x);
        if (static_cast<int>(out.size()) >= count) break;
    }
    return out;
}

// ----------------------------------------------------- roots of g mod p --

namespace {

struct PolyModP {
    // coeffs low->high, reduced degree <= 2 representation modulo a cubic
    uint64_t c[3];
};

uint64_t addm(uint64_t a, uint64_t b, uint64_t p) {
    uint64_t s = a + b;
    return s >= p ? s - p : s;
}
uint64_t subm(uint64_t a, uint64_t b, uint64_t p) { return a >= b ? a - b : a + p - b; }

PolyModP polymulmod(const PolyModP& u, const PolyModP& v, const uint64_t g[3], uint64_t p) {
    // g: monic cubic x^3 + g2 x^2 + g1 x + g0 reduced mod p
    uint64_t c[5] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            c[i + j] = (c[i + j] + mulmod_u64(u.c[i], v.c[j], p)) % p;
    for (int d = 4; d >= 3; --d) {
        uint64_t t = c[d];
        if (!t) continue;
        c[d] = 0;
        c[d - 1] = subm(c[d - 1], mulmod_u64(t, g[2], p), p);
        c[d - 2] = subm(c[d - 2], mulmod_u64(t, g[1], p), p);
        c[d - 3] = subm(c[d - 3], mulmod_u64(t, g[0], p), p);
    }
    return {{c[0], c[1], c[2]}};
}

PolyModP polypowmod(PolyModP b, uint64_t e, const uint64_t g[3], uint64_t p) {
    PolyModP r{{1, 0, 0}};
    while (e) {
        if (e & 1u) r = polymulmod(r, b, g, p);
        b = polymulmod(b, b, g, p);
        e >>= 1u;
    }
    return r;
}

// gcd of a polynomial of degree <= 2 (coeffs low->high, length 3) with the
// monic cubic g, over F_p; returns coefficient vector of the gcd.
std::vector<uint64_t> polygcd_with_g(std::vector<uint64_t> a, const uint64_t g[3], uint64_t p) {
    std::vector<uint64_t> b{g[0], g[1], g[2], 1};
    auto deg = [](const std::vector<uint64_t>& f) {
        int d = static_cast<int>(f.size()) - 1;
        while (d >= 0 && f[d] == 0) --d;
        return d;
    };
    auto trim = [&](std::vector<uint64_t>& f) { f.resize(std::max(deg(f) + 1, 1)); };
    trim(a);
    while (deg(a) >= 0 && !(deg(a) == 0 && a[0] == 0)) {
        // b mod a
        int da = deg(a), db = deg(b);
        if (da < 0) break;
        uint64_t inv = powmod_u64(a[da], p - 2, p);
        std::vector<uint64_t> r = b;
        for (int d = db; d >= da; --d) {
            int dd = deg(r);
            if (dd < da) break;
            uint64_t q = mulmod_u64(r[dd], inv, p);
            for (int k = 0; k <= da; ++k)
                r[dd - da + k] = subm(r[dd - da + k], mulmod_u64(q, a[k], p), p);
            trim(r);
        }
        b = a;
        a = r;
        trim(a);
        if (deg(a) == 0 && a[0] == 0) break;
    }
    trim(b);
    return b;
}

uint64_t sqrt_mod_p(uint64_t n, uint64_t p) {
    // Tonelli-Shanks, deterministic non-residue search
    n %= p;
    if (n == 0) return 0;
    if (p % 4 == 3) return powmod_u64(n, (p + 1) / 4, p);
    uint64_t q = p - 1, s = 0;
    while ((q & 1u) == 0) {
        q >>= 1u;
        ++s;
    }
    uint64_t z = 2;
    while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
    uint64_t m = s, c = powmod_u64(z, q, p), t = powmod_u64(n, q, p),
             r = powmod_u64(n, (q + 1) / 2, p);
    while (t != 1) {
        uint64_t i = 0, tt = t;
        while (tt != 1) {
            tt = mulmod_u64(tt, tt, p);
            ++i;
        }
        uint64_t b = c;
        for (uint64_t k = 0; k < m - i - 1; ++k) b = mulmod_u64(b, b, p);
        m = i;
        c = mulmod_u64(b, b, p);
        t = mulmod_u64(t, c, p);
        r = mulmod_u64(r, b, p);
    }
    return r;
}

}  // namespace

std::vector<long long> cubic_roots_mod_p(const std::array<Int, 4>& gc, long long pl) {
    uint64_t p = static_cast<uint64_t>(pl);
    auto red = [&](const Int& x) {
        Int r = x % pl;
        if (r < 0) r += pl;
        return r.convert_to<uint64_t>();
    };
    uint64_t g[3] = {red(gc[0]), red(gc[1]), red(gc[2])};
    std::vector<long long> roots;
    if (p < 600) {
        for (uint64_t r = 0; r < p; ++r) {
            uint64_t v = addm(mulmod_u64(addm(mulmod_u64(addm(r, g[2], p), r, p), g[1], p), r, p),
                              g[0], p);
            if (v == 0) roots.push_back(static_cast<long long>(r));
        }
        return roots;
    }
    // x^p mod g, then gcd with g isolates the linear factors
    PolyModP xp = polypowmod(PolyModP{{0, 1, 0}}, p, g, p);
    // xp - x
    std::vector<uint64_t> diff{xp.c[0], subm(xp.c[1], 1, p), xp.c[2]};
    std::vector<uint64_t> lin = polygcd_with_g(diff, g, p);
    auto deg = [](const std::vector<uint64_t>& f) {
        int d = static_cast<int>(f.size()) - 1;
        while (d >= 0 && f[d] == 0) --d;
        return d;
    };
    int d = deg(lin);
    if (d <= 0) return roots;
    // normalize monic
    uint64_t inv = powmod_u64(lin[d], p - 2, p);
    for (auto& x : lin) x = mulmod_u64(x, inv, p);
    if (d == 1) {
        roots.push_back(static_cast<long long>(subm(0, lin[0], p)));
        return roots;
    }
    if (d == 2) {
        // x^2 + bx + c
        uint64_t b = lin[1], c = lin[0];
        uint64_t disc = subm(mulmod_u64(b, b, p), mulmod_u64(4 % p, c, p), p);
        uint64_t r = sqrt_mod_p(disc, p);
        uint64_t inv2 = powmod_u64(2, p - 2, p);
        roots.push_back(static_cast<long long>(mulmod_u64(subm(r, b, p), inv2, p)));
        roots.push_back(static_cast<long long>(mulmod_u64(subm(subm(0, b, p), r, p), inv2, p)));
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    // full split: Cantor-Zassenhaus with a deterministic shift sequence
    for (uint64_t t = 0;; ++t) {
        PolyModP sh{{t, 1, 0}};
        PolyModP pw = polypowmod(sh, (p - 1) / 2, g, p);
        std::vector<uint64_t> w{subm(pw.c[0], 1, p), pw.c[1], pw.c[2]};
        std::vector<uint64_t> h = polygcd_with_g(w, g, p);
        int dh = deg(h);
        if (dh == 1 || dh == 2) {
            uint64_t invh = powmod_u64(h[dh], p - 2, p);
            for (auto& x : h) x = mulmod_u64(x, invh, p);
            std::vector<long long> part;
            if (dh == 1) {
                part.push_back(static_cast<long long>(subm(0, h[0], p)));
            } else {
                uint64_t b = h[1], c = h[0];
                uint64_t disc = subm(mulmod_u64(b, b, p), mulmod_u64(4 % p, c, p), p);
                uint64_t r = sqrt_mod_p(disc, p);
                uint64_t inv2 = powmod_u64(2, p - 2, p);
                part.push_back(static_cast<long long>(mulmod_u64(subm(r, b, p), inv2, p)));
                part.push_back(static_cast<long long>(mulmod_u64(subm(subm(0, b, p), r, p), inv2, p)));
            }
            // deflate: remaining roots from -(sum) and product relations
            // g = (x-r1)(x-r2)(x-r3): r1+r2+r3 = -g2, so find the rest directly
            std::vector<long long> all = part;
            uint64_t sum = 0;
            for (long long r0 : part) sum = addm(sum, static_cast<uint64_t>(r0), p);
            if (part.size() == 1) {
                // remaining quadratic: x^2 + (g2 + r)x + (g1 + r(g2 + r))
                uint64_t r0 = static_cast<uint64_t>(part[0]);
                uint64_t b = addm(g[2], r0, p);
                uint64_t c = addm(g[1], mulmod_u64(r0, b, p), p);
                uint64_t disc = subm(mulmod_u64(b, b, p), mulmod_u64(4 % p, c, p), p);
                uint64_t rr = sqrt_mod_p(disc, p);
                uint64_t inv2 = powmod_u64(2, p - 2, p);
                all.push_back(static_cast<long long>(mulmod_u64(subm(rr, b, p), inv2, p)));
                all.push_back(
                    static_cast<long long>(mulmod_u64(subm(subm(0, b, p), rr, p), inv2, p)));
            } else {
                uint64_t r3 = subm(subm(0, g[2], p), sum, p);
                all.push_back(static_cast<long long>(r3));
            }
            std::sort(all.begin(), all.end());
            all.erase(std::unique(all.begin(), all.end()), all.end());
            if (all.size() == 3) return all;
        }
    }
}

}  // namespace qc
