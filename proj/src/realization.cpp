#include "cmot/realization.hpp"

#include <algorithm>
#include <numeric>
#include <optional>

#include "cmot/errors.hpp"
#include "cmot/printing.hpp"
#include "cmot/qalg.hpp"

namespace cmot {

namespace {

// T sigma(T) ... sigma^{k-1}(T)
Matrix<QElem> twisted_power(const Motive& m, int k) {
    Matrix<QElem> acc = m.tau();
    for (int j = 1; j < k; ++j) acc = acc * m.sigma_tau(m.tau(), j);
    return acc;
}

using SK = Series<FqElem>;

// expand a rational function at t = t(z) (finite place) to precision N
SK expand_at(const QElem& f, const SK& tz, const FqFieldPtr& K, const Embedding& fromL, int N) {
    auto eval = [&](const FqPoly& g) {
        SK acc(K->zero(), N);
        for (int i = g.degree(); i >= 0; --i)
            acc = acc * tz + SK::from_coeff(fromL.apply(g.coeff(i)), 0, N);
        return acc;
    };
    SK num = eval(f.num());
    if (f.is_polynomial()) return num;
    SK den = eval(f.den());
    if (den.known_zero()) throw precision_too_low("denominator vanishes to full precision");
    return num * den.inv();
}

// expand at infinity: t = 1/z
SK expand_at_infinity(const QElem& f, const FqFieldPtr& L, int N) {
    auto eval = [&](const FqPoly& g) {
        // g(1/z) = z^{-deg} * rev(g)(z)
        int d = g.degree();
        std::vector<FqElem> c;
        c.reserve(d + 1);
        for (int i = d; i >= 0; --i) c.push_back(g.coeff(i));
        return SK(L->zero(), -d, N, std::move(c));
    };
    SK num = eval(f.num());
    if (f.is_polynomial()) return num;
    SK den = eval(f.den());
    if (den.known_zero()) throw precision_too_low("denominator vanishes to full precision");
    return num * den.inv();
}

} // namespace

LocalCrystal crystalline(const Motive& mot, const Place& v, int N, int component_index) {
    if (N < 1) throw bad_input("crystalline: precision must be >= 1");
    const FieldTower& tw = mot.tower();
    FqFieldPtr working = tw.L();
    FqElem component = tw.L()->zero();
    Matrix<SK> red(0, 0, SK(tw.L()->zero(), N));
    if (v.is_infinite()) {
        Matrix<QElem> tau = mot.tau();  // deg infinity = 1
        red = Matrix<SK>(tau.rows(), tau.cols(), SK(tw.L()->zero(), N));
        for (int i = 0; i < tau.rows(); ++i)
            for (int j = 0; j < tau.cols(); ++j)
                red.at(i, j) = expand_at_infinity(tau.at(i, j), tw.L(), N);
    } else {
        if (!v.base_field()->same_field(*tw.Fq()))
            throw bad_input("crystalline: place not over this tower's F_q");
        int d = v.degree();
        int e = tw.e();
        int lcm_ed = e / std::gcd(e, d) * d;
        const FieldTower::Ext& ext = tw.extension(lcm_ed / e);
        const FqFieldPtr& K = ext.K;
        // p_v over K via the coherent chain F_q -> L -> K
        FqPoly pvK = map_coeffs(v.poly(), K->zero(), [&](const FqElem& c) {
            return ext.from_L.apply(tw.iota().apply(c));
        });
        auto roots = roots_in_field(pvK);
        if ((int)roots.size() != d)
            throw std::logic_error("crystalline: p_v did not split in the working field");
        FqElem lambda = roots[component_index % roots.size()];
        working = K;
        component = lambda;
        // t(z): Newton iteration for p_v(t) = z around lambda
        SK z = SK::from_coeff(K->one(), 1, N);
        SK tz = SK::from_coeff(lambda, 0, N);
        FqPoly dpv = pvK.derivative();
        for (int it = 0; it < N + 2; ++it) {
            // evaluate p_v(tz) - z and p_v'(tz)
            auto eval_poly = [&](const FqPoly& g) {
                SK acc(K->zero(), N);
                for (int i = g.degree(); i >= 0; --i)
                    acc = acc * tz + SK::from_coeff(g.coeff(i), 0, N);
                return acc;
            };
            SK err = eval_poly(pvK) - z;
            if (err.known_zero()) break;
            tz = tz - err * eval_poly(dpv).inv();
        }
        Matrix<QElem> taud = twisted_power(mot, d);
        red = Matrix<SK>(taud.rows(), taud.cols(), SK(K->zero(), N));
        for (int i = 0; i < taud.rows(); ++i)
            for (int j = 0; j < taud.cols(); ++j) {
                // embed L-coefficients into K first
                const QElem& f = taud.at(i, j);
                FqPoly n2 = map_coeffs(f.num(), K->zero(),
                                       [&](const FqElem& c) { return ext.from_L.apply(c); });
                FqPoly d2 = map_coeffs(f.den(), K->zero(),
                                       [&](const FqElem& c) { return ext.from_L.apply(c); });
                red.at(i, j) = expand_at(QElem(n2, d2), tz, K, Embedding(K, K, K->gen()), N);
            }
    }
    SK det = red.det_cofactor();
    if (det.known_zero())
        throw precision_too_low("crystalline: determinant vanishes to full precision");
    long det_order = det.order();
    return LocalCrystal(v, N, working, component, std::move(red), det_order == 0, det_order);
}

// ---------------------------------------------------------------------------
// Tate module
// ---------------------------------------------------------------------------

namespace {

// F_p-linear solver: one elimination, many right-hand sides. Row
// operations are recorded in E so that solve() costs one matrix-vector
// product per call.
class FpSolver {
public:
    FpSolver(const std::vector<std::vector<int8_t>>& a, int p) : p_(p) {
        rows_ = (int)a.size();
        cols_ = rows_ ? (int)a[0].size() : 0;
        R_ = a;
        E_.assign(rows_, std::vector<int8_t>((size_t)rows_, 0));
        for (int i = 0; i < rows_; ++i) E_[i][i] = 1;
        pivot_of_col_.assign(cols_, -1);
        int row = 0;
        for (int c = 0; c < cols_ && row < rows_; ++c) {
            int piv = -1;
            for (int r = row; r < rows_; ++r)
                if (R_[r][c]) { piv = r; break; }
            if (piv < 0) continue;
            std::swap(R_[row], R_[piv]);
            std::swap(E_[row], E_[piv]);
            int iv = inv_mod(R_[row][c]);
            if (iv != 1) {
                for (int k = 0; k < cols_; ++k) R_[row][k] = (int8_t)(R_[row][k] * iv % p_);
                for (int k = 0; k < rows_; ++k) E_[row][k] = (int8_t)(E_[row][k] * iv % p_);
            }
            for (int r = 0; r < rows_; ++r) {
                if (r == row || !R_[r][c]) continue;
                int f = R_[r][c];
                for (int k = 0; k < cols_; ++k)
                    R_[r][k] = (int8_t)(((R_[r][k] - f * R_[row][k]) % p_ + p_) % p_);
                for (int k = 0; k < rows_; ++k)
                    E_[r][k] = (int8_t)(((E_[r][k] - f * E_[row][k]) % p_ + p_) % p_);
            }
            pivot_of_col_[c] = row;
            ++row;
        }
        rank_ = row;
    }

    int rank() const { return rank_; }

    std::vector<std::vector<int8_t>> kernel() const {
        std::vector<std::vector<int8_t>> out;
        for (int c = 0; c < cols_; ++c) {
            if (pivot_of_col_[c] >= 0) continue;
            std::vector<int8_t> v((size_t)cols_, 0);
            v[c] = 1;
            for (int k = 0; k < cols_; ++k)
                if (pivot_of_col_[k] >= 0)
                    v[k] = (int8_t)((p_ - R_[pivot_of_col_[k]][c]) % p_);
            out.push_back(std::move(v));
        }
        return out;
    }

    /// particular solution of A y = rhs, or nullopt when inconsistent
    std::optional<std::vector<int8_t>> solve(const std::vector<int8_t>& rhs) const {
        std::vector<int> u((size_t)rows_, 0);
        for (int r = 0; r < rows_; ++r) {
            long long acc = 0;
            for (int k = 0; k < rows_; ++k) acc += (long long)E_[r][k] * rhs[k];
            u[r] = (int)(acc % p_);
        }
        for (int r = rank_; r < rows_; ++r)
            if (u[r]) return std::nullopt;
        std::vector<int8_t> y((size_t)cols_, 0);
        for (int c = 0; c < cols_; ++c)
            if (pivot_of_col_[c] >= 0) y[c] = (int8_t)u[pivot_of_col_[c]];
        return y;
    }

private:
    int p_, rows_ = 0, cols_ = 0, rank_ = 0;
    std::vector<std::vector<int8_t>> R_, E_;
    std::vector<int> pivot_of_col_;

    int inv_mod(int v) const {
        int r = 1, e2 = p_ - 2, base = ((v % p_) + p_) % p_;
        while (e2 > 0) {
            if (e2 & 1) r = r * base % p_;
            base = base * base % p_;
            e2 >>= 1;
        }
        return r;
    }
};

struct TateWork {
    const Motive& mot;
    Place v;
    int N;
    int d;
    FqFieldPtr omega;
    Embedding fromL;   // L -> Omega
    Embedding fromFq;  // composite F_q -> Omega (coherent)
    LocalCtxPtr ring;  // Omega[t]/pv^N
    Matrix<LElem> T;   // tau reduced into the ring

    TateWork(const Motive& m, const Place& vv, int NN, int mdeg)
        : mot(m),
          v(vv),
          N(NN),
          d(vv.degree()),
          omega(m.tower().extension(mdeg).K),
          fromL(m.tower().extension(mdeg).from_L),
          fromFq(m.tower().Fq(), omega, fromL.apply(m.tower().iota().gen_image())),
          ring(std::make_shared<LocalCtx>(
              omega,
              map_coeffs(vv.poly(), omega->zero(),
                         [this](const FqElem& c) { return fromFq.apply(c); }),
              NN)),
          T(m.rank(), m.rank(), LElem(ring, fqpoly_zero(omega))) {
        for (int i = 0; i < m.rank(); ++i)
            for (int j = 0; j < m.rank(); ++j) {
                const QElem& f = m.tau().at(i, j);
                FqPoly n2 = map_coeffs(f.num(), omega->zero(),
                                       [&](const FqElem& c) { return fromL.apply(c); });
                FqPoly d2 = map_coeffs(f.den(), omega->zero(),
                                       [&](const FqElem& c) { return fromL.apply(c); });
                LElem num(ring, n2), den(ring, d2);
                if (!den.is_unit())
                    throw bad_input("tate_module: tau has a pole at the place");
                T.at(i, j) = num * den.inv();
            }
    }

    LocalCtxPtr ring1;                         // Omega[t]/pv
    std::shared_ptr<Matrix<LElem>> T0;         // tau mod pv

    void build_layer0() {
        ring1 = std::make_shared<LocalCtx>(omega, ring->pv, 1);
        T0 = std::make_shared<Matrix<LElem>>(T.rows(), T.cols(),
                                             LElem(ring1, fqpoly_zero(omega)));
        for (int i = 0; i < T.rows(); ++i)
            for (int j = 0; j < T.cols(); ++j)
                T0->at(i, j) = LElem(ring1, T.at(i, j).value());
    }

    std::vector<LElem> apply_op0(const std::vector<LElem>& x) const {
        std::vector<LElem> out(x.size(), LElem(ring1, fqpoly_zero(omega)));
        int a = mot.tower().a();
        for (int i = 0; i < (int)x.size(); ++i) {
            LElem acc(ring1, fqpoly_zero(omega));
            for (int j = 0; j < (int)x.size(); ++j) {
                FqPoly fx = map_coeffs(x[j].value(), omega->zero(),
                                       [&](const FqElem& c) { return c.frobenius(a); });
                acc = acc + T0->at(i, j) * LElem(ring1, std::move(fx));
            }
            out[i] = x[i] - acc;
        }
        return out;
    }

    // coefficientwise q-power Frobenius on ring elements (t fixed)
    LElem frob_q(const LElem& x, int k = 1) const {
        int a = mot.tower().a();
        FqPoly f = map_coeffs(x.value(), omega->zero(),
                              [&](const FqElem& c) { return c.frobenius(a * k); });
        return LElem(ring, std::move(f));
    }

    std::vector<LElem> apply_op(const std::vector<LElem>& x) const {
        // x - T * frob_q(x)
        std::vector<LElem> out(x.size(), LElem(ring, fqpoly_zero(omega)));
        std::vector<LElem> fx(x.size(), LElem(ring, fqpoly_zero(omega)));
        for (size_t i = 0; i < x.size(); ++i) fx[i] = frob_q(x[i]);
        for (int i = 0; i < (int)x.size(); ++i) {
            LElem acc(ring, fqpoly_zero(omega));
            for (int j = 0; j < (int)x.size(); ++j) acc = acc + T.at(i, j) * fx[j];
            out[i] = x[i] - acc;
        }
        return out;
    }
};

} // namespace

namespace {

unsigned long long residue_field_size(const Place& v) {
    unsigned long long q = 1;
    for (int i = 0; i < v.base_field()->degree(); ++i) q *= (unsigned long long)v.base_field()->p();
    unsigned long long qd = 1;
    for (int i = 0; i < v.degree(); ++i) qd *= q;
    return qd;
}

// Teichmueller representative of a residue c mod pv^k: the unique lift
// fixed by x -> x^{|F_v|}
FqPoly teichmuller_lift(const ResidueField& rf, const FqElem& c, int k) {
    if (c.is_zero()) return fqpoly_zero(rf.place().base_field());
    FqPoly mod2 = rf.place().poly().pow(k);
    unsigned long long qd = residue_field_size(rf.place());
    FqPoly teich = rf.lift_residue(c) % mod2;
    for (int it = 0; it < k + 4; ++it) {
        FqPoly nxt = poly_powmod(teich, qd, mod2);
        if (nxt == teich) return teich;
        teich = nxt;
    }
    throw std::logic_error("teichmuller_lift: did not stabilize");
}

} // namespace

std::vector<FqElem> teichmuller_digits(const ResidueField& rf, const FqPoly& x, int N) {
    const FqPoly& pv = rf.place().poly();
    FqPoly cur = x % pv.pow(N);
    std::vector<FqElem> digits;
    digits.reserve(N);
    for (int k = 0; k < N; ++k) {
        FqElem c = rf.reduce(q_from_poly(cur % pv));
        digits.push_back(c);
        FqPoly teich = teichmuller_lift(rf, c, N - k);
        cur = exact_div((cur - teich) % pv.pow(N - k), pv);
    }
    return digits;
}

FqPoly from_teichmuller_digits(const ResidueField& rf, const std::vector<FqElem>& digits,
                               int N) {
    const FqPoly& pv = rf.place().poly();
    FqPoly modulus = pv.pow(N);
    FqPoly acc = fqpoly_zero(rf.place().base_field());
    FqPoly pvk = fqpoly_constant(rf.place().base_field()->one());
    for (size_t k = 0; k < digits.size() && (int)k < N; ++k) {
        if (!digits[k].is_zero())
            acc = (acc + teichmuller_lift(rf, digits[k], N) * pvk) % modulus;
        pvk = (pvk * pv) % modulus;
    }
    return acc;
}

TateLattice tate_module(const Motive& mot, const Place& v, int N, TateOptions opt) {
    if (v.is_infinite() || mot.chardata().contains(v))
        throw bad_input("tate_module: place must be finite and outside the characteristic");
    if (N < 1) throw bad_input("tate_module: precision must be >= 1");
    const FieldTower& tw = mot.tower();
    int r = mot.rank();
    int d = v.degree();
    int p = tw.p();
    for (int m = 1; m <= opt.extension_cap; ++m) {
        TateWork W(mot, v, N, m);
        W.build_layer0();
        int nfp = W.omega->degree();  // [Omega : F_p]
        int dim = r * d * nfp;        // F_p-dimension of (Omega[t]/pv)^r
        if (r == 0) {
            auto fq_ring = std::make_shared<LocalCtx>(tw.Fq(), v.poly(), N);
            return TateLattice(v, N, m, W.omega, W.ring,
                               Matrix<LElem>(0, 0, LElem(W.ring, fqpoly_zero(W.omega))),
                               fq_ring,
                               Matrix<LElem>(0, 0, LElem(fq_ring, fqpoly_zero(tw.Fq()))),
                               true);
        }
        // layer-0 operator on (Omega[t]/pv)^r, F_p-linearized
        auto pack = [&](const std::vector<LElem>& x) {
            std::vector<int8_t> out((size_t)dim, 0);
            for (int i = 0; i < r; ++i) {
                const FqPoly& g = x[i].value() % W.ring->pv;
                for (int k = 0; k <= g.degree(); ++k)
                    for (int j = 0; j < nfp; ++j)
                        out[((size_t)i * d + k) * nfp + j] = (int8_t)g.coeff(k).coeffs()[j];
            }
            return out;
        };
        auto unpack_layer = [&](const std::vector<int8_t>& y) {
            std::vector<LElem> x(r, LElem(W.ring, fqpoly_zero(W.omega)));
            for (int i = 0; i < r; ++i) {
                std::vector<FqElem> c;
                c.reserve(d);
                for (int k = 0; k < d; ++k) {
                    std::vector<int> cc(nfp, 0);
                    for (int j = 0; j < nfp; ++j) cc[j] = y[((size_t)i * d + k) * nfp + j];
                    c.push_back(W.omega->element(std::move(cc)));
                }
                x[i] = LElem(W.ring, FqPoly(W.omega->zero(), std::move(c)));
            }
            return x;
        };
        std::vector<std::vector<int8_t>> A((size_t)dim);
        for (int col = 0; col < dim; ++col) {
            std::vector<int8_t> e((size_t)dim, 0);
            e[col] = 1;
            auto x0 = unpack_layer(e);
            std::vector<LElem> x1(x0.size(), LElem(W.ring1, fqpoly_zero(W.omega)));
            for (size_t ii = 0; ii < x0.size(); ++ii) x1[ii] = LElem(W.ring1, x0[ii].value());
            auto ox = W.apply_op0(x1);
            std::vector<LElem> oxN(ox.size(), LElem(W.ring, fqpoly_zero(W.omega)));
            for (size_t ii = 0; ii < ox.size(); ++ii) oxN[ii] = LElem(W.ring, ox[ii].value());
            A[col] = pack(oxN);
        }
        // transpose into row-major equations
        std::vector<std::vector<int8_t>> rows((size_t)dim, std::vector<int8_t>((size_t)dim, 0));
        for (int c = 0; c < dim; ++c)
            for (int rr = 0; rr < dim; ++rr) rows[rr][c] = A[c][rr];
        FpSolver solver(rows, p);
        auto ker = solver.kernel();
        // extract an F_nu-basis greedily: span closed under mult by t and F_q
        std::vector<std::vector<int8_t>> span_rows;
        std::vector<int> span_pivots;
        auto reduce_vec = [&](std::vector<int8_t> vv) {
            for (size_t s = 0; s < span_rows.size(); ++s) {
                int pc = span_pivots[s];
                if (!vv[pc]) continue;
                int f = vv[pc];
                for (int k = 0; k < dim; ++k)
                    vv[k] = (int8_t)(((vv[k] - f * span_rows[s][k]) % p + p) % p);
            }
            return vv;
        };
        auto add_to_span = [&](const std::vector<int8_t>& vv) {
            auto red = reduce_vec(vv);
            int pc = -1;
            for (int k = 0; k < dim; ++k)
                if (red[k]) { pc = k; break; }
            if (pc < 0) return false;
            // normalize pivot 1
            int iv = 1, e2 = p - 2, base = red[pc];
            while (e2 > 0) {
                if (e2 & 1) iv = iv * base % p;
                base = base * base % p;
                e2 >>= 1;
            }
            for (int k = 0; k < dim; ++k) red[k] = (int8_t)(red[k] * iv % p);
            span_rows.push_back(red);
            span_pivots.push_back(pc);
            return true;
        };
        std::vector<std::vector<LElem>> layer0;
        for (auto& kv : ker) {
            if ((int)layer0.size() >= r) break;
            auto red = reduce_vec(kv);
            bool nz = false;
            for (auto b : red) nz = nz || b != 0;
            if (!nz) continue;
            auto x = unpack_layer(kv);
            layer0.push_back(x);
            // add F_nu-multiples (u^i t^k x) to the span
            std::vector<LElem> cur = x;
            for (int k = 0; k < d; ++k) {
                std::vector<LElem> scaled = cur;
                for (int i2 = 0; i2 < tw.a(); ++i2) {
                    add_to_span(pack(scaled));
                    for (auto& c : scaled)
                        c = c * LElem(W.ring, fqpoly_constant(W.fromFq.apply(tw.Fq()->gen())));
                }
                for (auto& c : cur)
                    c = c * LElem(W.ring, fqpoly_x(W.omega));
            }
        }
        if ((int)layer0.size() < r) continue;  // extend Omega
        // lift layer by layer
        bool lifted_all = true;
        std::vector<std::vector<LElem>> sols;
        for (auto& x0 : layer0) {
            std::vector<LElem> x = x0;
            bool ok = true;
            for (int k = 1; k < N && ok; ++k) {
                // residual E = x - T frob(x) must vanish mod pv^{k+1}
                auto E = W.apply_op(x);
                // rhs = -(E / pv^k) mod pv
                std::vector<int8_t> rhs((size_t)dim, 0);
                bool zero = true;
                std::vector<LElem> rvec(r, LElem(W.ring, fqpoly_zero(W.omega)));
                for (int i = 0; i < r; ++i) {
                    FqPoly val = E[i].value();
                    // divide by pv^k
                    for (int s = 0; s < k; ++s) {
                        FqPoly qq(W.omega->zero()), rr2(W.omega->zero());
                        divmod(val, W.ring->pv, qq, rr2);
                        if (!rr2.is_zero()) throw std::logic_error("tate: residual not divisible");
                        val = qq;
                    }
                    rvec[i] = LElem(W.ring, -val);
                    if (!rvec[i].is_zero()) zero = false;
                }
                if (zero) continue;
                rhs = pack(rvec);
                auto sol = solver.solve(rhs);
                if (!sol) {
                    ok = false;  // needs a larger coefficient field
                    break;
                }
                auto yv = unpack_layer(*sol);
                LElem pvk(W.ring, W.ring->pv.pow(k));
                for (int i = 0; i < r; ++i) x[i] = x[i] + pvk * yv[i];
            }
            if (!ok) {
                lifted_all = false;
                break;
            }
            sols.push_back(x);
        }
        if (!lifted_all) continue;  // extend Omega and retry
        // assemble basis matrix and check invertibility over the ring
        Matrix<LElem> X(r, r, LElem(W.ring, fqpoly_zero(W.omega)));
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) X.at(i, j) = sols[j][i];
        if (!X.det_cofactor().is_unit())
            throw std::logic_error("tate_module: basis matrix not invertible");
        // Frobenius action: Frob_L = q^e power on Omega
        Matrix<LElem> FX(r, r, LElem(W.ring, fqpoly_zero(W.omega)));
        for (int j = 0; j < r; ++j)
            for (int i = 0; i < r; ++i) FX.at(i, j) = W.frob_q(X.at(i, j), tw.e());
        Matrix<LElem> F = X.inverse() * FX;
        // verify F is fixed by the q-power Frobenius and descend to F_q[t]
        auto fq_ring = std::make_shared<LocalCtx>(
            tw.Fq(), v.poly(), N);
        Matrix<LElem> Fq_mat(r, r, LElem(fq_ring, fqpoly_zero(tw.Fq())));
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (!(W.frob_q(F.at(i, j)) == F.at(i, j)))
                    throw std::logic_error("tate_module: Frobenius matrix not Galois-stable");
                // coefficientwise preimage through F_q -> Omega
                std::vector<FqElem> c;
                const FqPoly& g = F.at(i, j).value();
                for (int k2 = 0; k2 <= g.degree(); ++k2) {
                    auto pre = W.fromFq.preimage(g.coeff(k2));
                    if (!pre) throw std::logic_error("tate_module: descent failed");
                    c.push_back(*pre);
                }
                Fq_mat.at(i, j) = LElem(fq_ring, FqPoly(tw.Fq()->zero(), std::move(c)));
            }
        // chi(Frob^{-1}) = 0 mod pv^N
        Matrix<LElem> Finv = Fq_mat.inverse();
        const QPoly& chi = mot.char_data().chi;
        Matrix<LElem> acc(r, r, LElem(fq_ring, fqpoly_zero(tw.Fq())));
        Matrix<LElem> ident = Matrix<LElem>::identity(r, LElem(fq_ring, fqpoly_zero(tw.Fq())));
        for (int i = chi.degree(); i >= 0; --i) {
            acc = acc * Finv;
            const QElem& ci = chi.coeff(i);
            if (!ci.is_zero()) {
                // reduce c into F_q[t]/pv^N (denominator is prime to pv)
                LElem num(fq_ring, ci.num() % fq_ring->modulus);
                LElem den(fq_ring, ci.den() % fq_ring->modulus);
                acc = acc + ident.scaled(num * den.inv());
            }
        }
        bool chi_ok = acc.is_zero();
        if (!chi_ok)
            throw std::logic_error("tate_module: chi(Frob^{-1}) != 0 at this precision");
        return TateLattice(v, N, m, W.omega, W.ring, X, fq_ring, Fq_mat, chi_ok);
    }
    throw extension_cap_exceeded("tate_module: no splitting field within the cap");
}

TateLattice etale_cohomology(const Motive& m, const Place& v, int i, int N, TateOptions opt) {
    if (i < 0) throw bad_input("etale_cohomology: negative index");
    // i > rank gives the zero motive (empty compound matrix), rank 0
    return tate_module(m.exterior_power(i), v, N, opt);
}

ZetaFunction zeta(const Motive& m, bool include_h0) {
    const FieldTower& tw = m.tower();
    const Matrix<QElem>& pi = m.frobenius();
    QPoly num = qpoly_constant(q_one(tw.Fq()));
    QPoly den = num;
    for (int i = include_h0 ? 0 : 1; i <= m.rank(); ++i) {
        Matrix<QElem> lam = pi.compound(i);
        int n = lam.rows();
        // det(I - u * lam) over (L(t))[u] by fraction-free elimination
        using PQ = Poly<QElem>;
        PQ zero_p(q_zero(tw.L()));
        Matrix<PQ> b(n, n, zero_p);
        for (int r2 = 0; r2 < n; ++r2)
            for (int c2 = 0; c2 < n; ++c2) {
                PQ e = PQ::monomial(q_zero(tw.L()), -lam.at(r2, c2), 1);
                if (r2 == c2) e = e + PQ::constant(q_zero(tw.L()), q_one(tw.L()));
                b.at(r2, c2) = e;
            }
        PQ detb = b.det_bareiss();
        // descend coefficients to Q
        std::vector<QElem> c;
        c.reserve(detb.degree() + 1);
        for (int k = 0; k <= detb.degree(); ++k) c.push_back(m.descend(detb.coeff(k)));
        QPoly factor(q_zero(tw.Fq()), std::move(c));
        if (i % 2 == 1) num = num * factor;
        else den = den * factor;
    }
    // cancel the gcd and normalize den(0) = 1
    QPoly g = poly_gcd(num, den);
    if (g.degree() > 0) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    QElem c0 = den.coeff(0);
    if (!c0.is_zero()) {
        QElem ci = c0.inv();
        num = num.scaled(ci);
        den = den.scaled(ci);
    }
    return {num, den};
}

} // namespace cmot
