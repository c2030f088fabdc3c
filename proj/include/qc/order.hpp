#pragma once

// Exact arithmetic in the maximal order of a cyclic cubic field, plus the
// HNF ideal-lattice layer used for factoring, class groups and valuations.

#include <array>
#include <optional>
#include <vector>

#include "qc/ints.hpp"

namespace qc {

using Elem = std::array<Int, 3>;  // coordinates in the order basis w0 = 1, w1, w2

struct IdealLat {
    // Row-style HNF, upper triangular: rows generate the lattice.
    // h[i][j] = 0 for j < i, h[i][i] > 0, entries above a pivot reduced mod it.
    Int h[3][3];

    Int norm() const { return h[0][0] * h[1][1] * h[2][2]; }
    bool operator==(const IdealLat& o) const;
    bool contains(const Elem& v) const;
};

IdealLat hnf_from_rows(std::vector<Elem> rows);

class CubicOrder {
  public:
    // Builds the maximal order of the cyclic cubic field of the given
    // conductor from a monic integer defining cubic whose splitting field it
    // is (Gaussian-period polynomial).  Starts from the power basis of a
    // root, enlarges at primes dividing the index, and certifies
    // disc = conductor^2 exactly.  Throws on certification failure.
    CubicOrder(long long conductor, const std::array<Int, 4>& cubic);

    long long conductor() const { return f_; }
    Int disc() const { return disc_; }
    const std::array<Int, 4>& defining_cubic() const { return g_; }

    // element arithmetic (coordinates in the order basis)
    Elem one() const { return Elem{1, 0, 0}; }
    Elem from_int(const Int& n) const { return Elem{n, 0, 0}; }
    Elem add(const Elem& x, const Elem& y) const;
    Elem sub(const Elem& x, const Elem& y) const;
    Elem neg(const Elem& x) const;
    Elem mul(const Elem& x, const Elem& y) const;
    Elem mul_scalar(const Elem& x, const Int& c) const;
    Elem pow(Elem x, unsigned e) const;
    Int norm(const Elem& x) const;
    Int trace(const Elem& x) const;
    // monic cubic char poly of x: t^3 + c2 t^2 + c1 t + c0
    std::array<Int, 4> charpoly(const Elem& x) const;

    // exact division y = x / d (throws if not exactly divisible in the order)
    Elem div_exact(const Elem& x, const Elem& d) const;
    bool divides(const Elem& d, const Elem& x) const;

    // Galois action of a fixed generator of Gal(F/Q)
    Elem sigma(const Elem& x) const;
    Elem sigma_pow(Elem x, int k) const;

    // real embeddings, fixed order
    std::array<hpreal, 3> embed(const Elem& x) const;
    std::array<hpreal, 3> theta() const { return theta_; }

    // coords of theta (root of the defining cubic) in the order basis
    Elem theta_elem() const;

    // Round an embedding triple to order coordinates (nearest lattice point
    // coordinate-wise); used to reconstruct elements found numerically.
    Elem round_from_embedding(const std::array<hpreal, 3>& y) const;

    // exact square / cube-free root helpers: y with y^k == x, if any
    std::optional<Elem> kth_root(const Elem& x, int k) const;

    // the element 1/den * (power-basis row) data used for residue maps
    Int basis_denominator() const { return den_; }
    const std::array<std::array<Int, 3>, 3>& basis_rows() const { return basis_; }

    // principal ideal lattice of x
    IdealLat principal(const Elem& x) const;
    IdealLat whole_ring() const;
    IdealLat mul(const IdealLat& a, const IdealLat& b) const;
    IdealLat mul(const IdealLat& a, const Elem& x) const;
    IdealLat pow(const IdealLat& a, unsigned e) const;
    IdealLat scale(const IdealLat& a, const Int& c) const;  // c * a

    // Short vectors of an ideal lattice under the embedding quadratic form
    // (floating LLL + small search).  Returns candidates sorted by |N|.
    std::vector<Elem> short_vectors(const IdealLat& L, int count) const;

  private:
    void build_mul_table();
    void certify();

    long long f_ = 0;
    std::array<Int, 4> g_{};  // x^3 + g[2] x^2 + g[1] x + g[0], g[3] = 1
    Int disc_;
    Int den_ = 1;                                // basis = basis_ / den_ over power basis
    std::array<std::array<Int, 3>, 3> basis_{};  // rows: w_i in power-basis coords
    Int table_[3][3][3];                         // w_i w_j = sum_k table_[i][j][k] w_k
    std::array<hpreal, 3> theta_{};              // embeddings of theta
    hpreal emb_[3][3];                           // emb_[k][i] = sigma_k(w_i)
    hpreal emb_inv_[3][3];                       // inverse of emb_
    std::array<std::array<Int, 3>, 3> sigma_{};  // sigma(w_i) coords (rows)
};

// All roots of a monic cubic mod p (0 <= r < p), deterministic.
std::vector<long long> cubic_roots_mod_p(const std::array<Int, 4>& g, long long p);

}  // namespace qc
