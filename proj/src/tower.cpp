#include "cmot/tower.hpp"

#include "cmot/errors.hpp"
#include "cmot/fqpoly.hpp"

namespace cmot {

namespace {

// factor q = p^a for a prime p
std::pair<int, int> prime_power(long long q) {
    if (q < 2) throw bad_input("q must be a prime power >= 2");
    for (int p = 2; (long long)p * p <= q; ++p) {
        if (q % p == 0) {
            int a = 0;
            long long r = q;
            while (r % p == 0) {
                r /= p;
                ++a;
            }
            if (r != 1) throw bad_input("q is not a prime power");
            return {p, a};
        }
    }
    return {(int)q, 1};
}

} // namespace

FieldTower::FieldTower(long long q, int e, std::optional<std::vector<int>> fq_def,
                       std::optional<std::vector<int>> l_def,
                       std::optional<FqElem> iota_gen_image)
    : q_(q), e_(e), iota_() {
    if (e < 1) throw bad_input("e must be positive");
    auto [p, a] = prime_power(q);
    p_ = p;
    a_ = a;
    Fq_ = fq_def ? FqField::make(p, *fq_def, "u") : FqField::canonical(p, a, "u");
    if (Fq_->degree() != a) throw bad_input("F_q defining polynomial has the wrong degree");
    L_ = l_def ? FqField::make(p, *l_def, "g") : FqField::canonical(p, a * e, "g");
    if (L_->degree() != a * e) throw bad_input("L defining polynomial has the wrong degree");
    // an explicit generator image keeps base-change towers coherent with
    // their parent; otherwise the least-root choice is canonical
    iota_ = iota_gen_image ? Embedding(Fq_, L_, *iota_gen_image)
                           : embedding_between(Fq_, L_);
    // Frobenius sanity: phi^e = id on L, and iota commutes with Frobenius
    FqElem g = L_->gen();
    if (!(sigma(g, e) == g)) throw std::logic_error("FieldTower: sigma^e != id on L");
    FqElem u = Fq_->gen();
    if (!(iota_.apply(u.frobenius(a)) == sigma(iota_.apply(u))))
        throw std::logic_error("FieldTower: embedding does not commute with Frobenius");
}

FqElem FieldTower::sigma(const FqElem& x, int k) const {
    int kk = ((k % e_) + e_) % e_;  // sigma^e = id on L
    return x.frobenius(a_ * kk);
}

QElem FieldTower::sigma_q(const QElem& f, int k) const {
    FqPoly n = map_coeffs(f.num(), L_->zero(), [&](const FqElem& c) { return sigma(c, k); });
    FqPoly d = map_coeffs(f.den(), L_->zero(), [&](const FqElem& c) { return sigma(c, k); });
    return QElem(std::move(n), std::move(d));
}

bool FieldTower::sigma_fixed(const FqElem& x) const { return sigma(x) == x; }

FqElem FieldTower::descend(const FqElem& x) const {
    auto pre = iota_.preimage(x);
    if (!pre) throw descent_failure("element is not Frobenius-fixed");
    return *pre;
}

std::vector<FqElem> FieldTower::fq_coords(const FqElem& x) const {
    // solve x = sum_j iota(c_j) g^j over F_p; columns iota(u^i) g^j for
    // i < a, j < e form an invertible matrix (basis property)
    int n = a_ * e_;
    int p = p_;
    auto inv_mod_p = [p](int v) {
        int r = 1, e2 = p - 2, base = ((v % p) + p) % p;
        while (e2 > 0) {
            if (e2 & 1) r = r * base % p;
            base = base * base % p;
            e2 >>= 1;
        }
        return r;
    };
    if (coord_solver_.empty()) {
        std::vector<std::vector<int>> A(n, std::vector<int>(2 * n, 0));
        FqElem u = Fq_->gen();
        FqElem gp = L_->one();
        int col = 0;
        for (int j = 0; j < e_; ++j) {
            FqElem up = Fq_->one();
            for (int i = 0; i < a_; ++i) {
                FqElem b = iota_.apply(up) * gp;
                for (int r = 0; r < n; ++r) A[r][col] = b.coeffs()[r];
                ++col;
                up = up * u;
            }
            gp = gp * L_->gen();
        }
        for (int r = 0; r < n; ++r) A[r][n + r] = 1;  // augment identity
        for (int c2 = 0; c2 < n; ++c2) {
            int piv = -1;
            for (int r = c2; r < n; ++r)
                if (A[r][c2]) { piv = r; break; }
            if (piv < 0) throw std::logic_error("fq_coords: basis matrix singular");
            std::swap(A[c2], A[piv]);
            int iv = inv_mod_p(A[c2][c2]);
            for (int k = 0; k < 2 * n; ++k) A[c2][k] = A[c2][k] * iv % p;
            for (int r = 0; r < n; ++r) {
                if (r == c2 || !A[r][c2]) continue;
                int f = A[r][c2];
                for (int k = 0; k < 2 * n; ++k) A[r][k] = ((A[r][k] - f * A[c2][k]) % p + p) % p;
            }
        }
        coord_solver_.assign(n, std::vector<int>(n, 0));
        for (int r = 0; r < n; ++r)
            for (int k = 0; k < n; ++k) coord_solver_[r][k] = A[r][n + k];
    }
    std::vector<int> y(n, 0);
    for (int r = 0; r < n; ++r) {
        long long acc = 0;
        for (int k = 0; k < n; ++k) acc += (long long)coord_solver_[r][k] * x.coeffs()[k];
        y[r] = (int)(acc % p);
    }
    std::vector<FqElem> out;
    out.reserve(e_);
    for (int j = 0; j < e_; ++j) {
        std::vector<int> c(a_, 0);
        for (int i = 0; i < a_; ++i) c[i] = y[j * a_ + i];
        out.push_back(Fq_->element(std::move(c)));
    }
    return out;
}

const FieldTower::Ext& FieldTower::extension(int m) const {
    auto it = ext_cache_.find(m);
    if (it != ext_cache_.end()) return it->second;
    if (m < 1) throw bad_input("extension degree must be positive");
    Ext ext;
    if (m == 1) {
        ext.K = L_;
        ext.from_L = Embedding(L_, L_, L_->gen());
    } else {
        ext.K = FqField::canonical(p_, a_ * e_ * m);
        ext.from_L = embedding_between(L_, ext.K);
    }
    return ext_cache_.emplace(m, std::move(ext)).first->second;
}

bool FieldTower::same(const FieldTower& other) const {
    return p_ == other.p_ && a_ == other.a_ && e_ == other.e_ &&
           Fq_->same_field(*other.Fq_) && L_->same_field(*other.L_);
}

} // namespace cmot
