#include "cmot/fq.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>

#include "cmot/fqpoly.hpp"

namespace cmot {

// ---------------------------------------------------------------------------
// F_p[x] helpers on raw int vectors (coefficients in [0,p)), used before any
// FqField exists: irreducibility of defining polynomials and canonical field
// generation.
// ---------------------------------------------------------------------------
namespace {

using IPoly = std::vector<int>;  // c[i] = coeff of x^i, trimmed

void itrim(IPoly& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

IPoly imul(const IPoly& a, const IPoly& b, int p) {
    if (a.empty() || b.empty()) return {};
    IPoly r(a.size() + b.size() - 1, 0);
    for (size_t i = 0; i < a.size(); ++i) {
        if (!a[i]) continue;
        for (size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + a[i] * b[j]) % p;
    }
    itrim(r);
    return r;
}

// a mod m, m monic
IPoly imod(IPoly a, const IPoly& m, int p) {
    itrim(a);
    int dm = (int)m.size() - 1;
    while ((int)a.size() - 1 >= dm) {
        int d = (int)a.size() - 1 - dm;
        int f = a.back();
        if (f) {
            for (int i = 0; i <= dm; ++i) {
                int v = a[i + d] - f * m[i] % p;
                a[i + d] = ((v % p) + p) % p;
            }
        }
        a.pop_back();
        itrim(a);
    }
    return a;
}

IPoly ipow_p_mod(IPoly base, long long k, const IPoly& m, int p) {
    // base^(p^k) mod m
    for (long long s = 0; s < k; ++s) {
        IPoly acc = {1};
        IPoly b = base;
        int e = p;
        while (e > 0) {
            if (e & 1) acc = imod(imul(acc, b, p), m, p);
            e >>= 1;
            if (e) b = imod(imul(b, b, p), m, p);
        }
        base = acc;
    }
    return base;
}

IPoly igcd(IPoly a, IPoly b, int p) {
    itrim(a);
    itrim(b);
    auto inv_mod_p = [p](int v) {
        int r = 1, e = p - 2, base = ((v % p) + p) % p;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (!b.empty()) {
        // make b monic then reduce
        IPoly bm = b;
        int inv = inv_mod_p(bm.back());
        for (auto& c : bm) c = c * inv % p;
        IPoly r = imod(a, bm, p);
        a = b;
        b = r;
    }
    return a;
}

bool iprime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

// Rabin irreducibility over F_p
bool i_irreducible(const IPoly& f, int p) {
    int n = (int)f.size() - 1;
    if (n <= 0) return false;
    if (n == 1) return true;
    IPoly x = {0, 1};
    // x^{p^n} == x mod f
    IPoly xn = ipow_p_mod(x, n, f, p);
    IPoly diff = xn;
    diff.resize(std::max<size_t>(diff.size(), 2), 0);
    diff[1] = ((diff[1] - 1) % p + p) % p;
    itrim(diff);
    if (!diff.empty()) return false;
    // gcd(x^{p^{n/l}} - x, f) = 1 for prime divisors l of n
    int m = n;
    for (int l = 2; l * l <= m; ++l) {
        if (m % l) continue;
        while (m % l == 0) m /= l;
        IPoly xh = ipow_p_mod(x, n / l, f, p);
        IPoly d = xh;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        itrim(d);
        IPoly g = igcd(f, d, p);
        if ((int)g.size() - 1 != 0) return false;
    }
    if (m > 1) {
        IPoly xh = ipow_p_mod(x, n / m, f, p);
        IPoly d = xh;
        d.resize(std::max<size_t>(d.size(), 2), 0);
        d[1] = ((d[1] - 1) % p + p) % p;
        itrim(d);
        IPoly g = igcd(f, d, p);
        if ((int)g.size() - 1 != 0) return false;
    }
    return true;
}

std::map<std::pair<int, int>, FqFieldPtr>& canonical_cache() {
    static std::map<std::pair<int, int>, FqFieldPtr> cache;
    return cache;
}
std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

} // namespace

// ---------------------------------------------------------------------------
// FqField
// ---------------------------------------------------------------------------

FqFieldPtr FqField::make(int p, std::vector<int> defining, std::string gen_name) {
    if (!iprime(p)) throw std::domain_error("FqField: p is not prime");
    for (auto& c : defining) c = ((c % p) + p) % p;
    itrim(defining);
    int n = (int)defining.size() - 1;
    if (n < 1) throw std::domain_error("FqField: defining polynomial must be nonconstant");
    if (defining.back() != 1) throw std::domain_error("FqField: defining polynomial must be monic");
    if (n > 1 && !i_irreducible(defining, p))
        throw std::domain_error("FqField: defining polynomial is reducible");
    return FqFieldPtr(new FqField(p, n, std::move(defining), std::move(gen_name)));
}

FqFieldPtr FqField::prime_field(int p) { return canonical(p, 1); }

FqFieldPtr FqField::canonical(int p, int n, std::string gen_name) {
    {
        std::lock_guard<std::mutex> lock(cache_mutex());
        auto it = canonical_cache().find({p, n});
        if (it != canonical_cache().end()) return it->second;
    }
    if (!iprime(p)) throw std::domain_error("FqField: p is not prime");
    if (n < 1) throw std::domain_error("FqField: degree must be positive");
    FqFieldPtr result;
    if (n == 1) {
        result = FqFieldPtr(new FqField(p, 1, {0, 1}, std::move(gen_name)));
    } else {
        // least monic irreducible in base-p counter order on (c_0,...,c_{n-1})
        std::vector<int> c(n, 0);
        for (;;) {
            IPoly f(c.begin(), c.end());
            f.push_back(1);
            if (i_irreducible(f, p)) {
                result = FqFieldPtr(new FqField(p, n, std::move(f), std::move(gen_name)));
                break;
            }
            int i = 0;
            while (i < n && ++c[i] == p) c[i++] = 0;
            if (i == n) throw std::logic_error("FqField: no irreducible found");
        }
    }
    std::lock_guard<std::mutex> lock(cache_mutex());
    canonical_cache().emplace(std::make_pair(p, n), result);
    return result;
}

std::vector<int> FqField::reduce(std::vector<int> v) const {
    for (auto& c : v) c = ((c % p_) + p_) % p_;
    itrim(v);
    v = imod(std::move(v), mod_, p_);
    v.resize(n_, 0);
    return v;
}

FqElem FqField::zero() const { return FqElem(shared_from_this(), std::vector<int>(n_, 0)); }

FqElem FqField::one() const {
    std::vector<int> c(n_, 0);
    if (p_ > 1) c[0] = 1 % p_;
    return FqElem(shared_from_this(), std::move(c));
}

FqElem FqField::gen() const {
    std::vector<int> c(n_, 0);
    if (n_ > 1)
        c[1] = 1;
    // for n == 1 the generator is the image of x, i.e. 0 mod (x)
    return FqElem(shared_from_this(), std::move(c));
}

FqElem FqField::from_int(long long v) const {
    std::vector<int> c(n_, 0);
    c[0] = (int)(((v % p_) + p_) % p_);
    return FqElem(shared_from_this(), std::move(c));
}

FqElem FqField::element(std::vector<int> coeffs) const {
    return FqElem(shared_from_this(), reduce(std::move(coeffs)));
}

std::vector<FqElem> FqField::all_elements(long long cap) const {
    long long size = 1;
    for (int i = 0; i < n_; ++i) {
        size *= p_;
        if (size > cap) throw std::domain_error("FqField::all_elements: field too large");
    }
    std::vector<FqElem> out;
    out.reserve((size_t)size);
    std::vector<int> c(n_, 0);
    for (long long k = 0; k < size; ++k) {
        out.push_back(FqElem(shared_from_this(), c));
        int i = 0;
        while (i < n_ && ++c[i] == p_) c[i++] = 0;
    }
    return out;
}

bool FqField::same_field(const FqField& other) const {
    return p_ == other.p_ && n_ == other.n_ && mod_ == other.mod_;
}

const std::vector<std::vector<int>>& FqField::frobenius_matrix() const {
    if (frob_.empty()) {
        // column j = g^{j*p} in the power basis
        std::vector<std::vector<int>> m(n_, std::vector<int>(n_, 0));
        IPoly gp = ipow_p_mod({0, 1}, 1, mod_, p_);  // g^p
        IPoly col = {1};
        for (int j = 0; j < n_; ++j) {
            for (int i = 0; i < (int)col.size(); ++i) m[i][j] = col[i];
            col = imod(imul(col, gp, p_), mod_, p_);
        }
        frob_ = std::move(m);
    }
    return frob_;
}

// ---------------------------------------------------------------------------
// FqElem
// ---------------------------------------------------------------------------

FqElem::FqElem(FqFieldPtr F, std::vector<int> coeffs) : F_(std::move(F)), c_(std::move(coeffs)) {
    assert((int)c_.size() == F_->degree());
}

bool FqElem::is_zero() const {
    for (int v : c_)
        if (v) return false;
    return true;
}

bool FqElem::is_one() const {
    if (c_.empty() || c_[0] != 1 % F_->p()) return F_->p() == 1;
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

FqElem FqElem::one_like() const { return F_->one(); }

bool FqElem::in_prime_field() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i]) return false;
    return true;
}

int FqElem::prime_value() const {
    assert(in_prime_field());
    return c_.empty() ? 0 : c_[0];
}

FqElem operator+(const FqElem& a, const FqElem& b) {
    assert(a.F_->same_field(*b.F_));
    std::vector<int> c(a.c_.size());
    int p = a.F_->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = (a.c_[i] + b.c_[i]) % p;
    return FqElem(a.F_, std::move(c));
}

FqElem operator-(const FqElem& a, const FqElem& b) {
    assert(a.F_->same_field(*b.F_));
    std::vector<int> c(a.c_.size());
    int p = a.F_->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = ((a.c_[i] - b.c_[i]) % p + p) % p;
    return FqElem(a.F_, std::move(c));
}

FqElem operator-(const FqElem& a) {
    std::vector<int> c(a.c_.size());
    int p = a.F_->p();
    for (size_t i = 0; i < c.size(); ++i) c[i] = (p - a.c_[i]) % p;
    return FqElem(a.F_, std::move(c));
}

FqElem operator*(const FqElem& a, const FqElem& b) {
    assert(a.F_->same_field(*b.F_));
    IPoly r = imul(a.c_, b.c_, a.F_->p());
    return FqElem(a.F_, a.F_->reduce(std::move(r)));
}

bool operator==(const FqElem& a, const FqElem& b) {
    return a.F_->same_field(*b.F_) && a.c_ == b.c_;
}

FqElem FqElem::inv() const {
    if (is_zero()) throw std::domain_error("FqElem: inverse of zero");
    // extended Euclid in F_p[x] against the defining polynomial
    int p = F_->p();
    IPoly r0 = F_->defining(), r1 = c_;
    itrim(r1);
    IPoly t0 = {}, t1 = {1};
    auto inv_mod_p = [p](int v) {
        int r = 1, e = p - 2, base = ((v % p) + p) % p;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    while (!r1.empty()) {
        // q, r = divmod(r0, r1)
        IPoly q;
        IPoly rem = r0;
        int d1 = (int)r1.size() - 1;
        int linv = inv_mod_p(r1.back());
        itrim(rem);
        while ((int)rem.size() - 1 >= d1 && !rem.empty()) {
            int d = (int)rem.size() - 1 - d1;
            int f = rem.back() * linv % p;
            if ((int)q.size() < d + 1) q.resize(d + 1, 0);
            q[d] = (q[d] + f) % p;
            for (int i = 0; i <= d1; ++i) {
                int v = rem[i + d] - f * r1[i] % p;
                rem[i + d] = ((v % p) + p) % p;
            }
            itrim(rem);
        }
        IPoly t2_sub = imul(q, t1, p);
        IPoly t2 = t0;
        t2.resize(std::max(t2.size(), t2_sub.size()), 0);
        for (size_t i = 0; i < t2_sub.size(); ++i) t2[i] = ((t2[i] - t2_sub[i]) % p + p) % p;
        itrim(t2);
        r0 = r1;
        r1 = rem;
        t0 = t1;
        t1 = t2;
    }
    // r0 = gcd (a constant, since defining poly is irreducible)
    assert((int)r0.size() == 1);
    int s = inv_mod_p(r0[0]);
    for (auto& v : t0) v = v * s % p;
    return FqElem(F_, F_->reduce(std::move(t0)));
}

FqElem FqElem::pow(long long e) const {
    if (e < 0) return inv().pow(-e);
    FqElem base = *this, r = F_->one();
    long long k = e;
    while (k > 0) {
        if (k & 1) r = r * base;
        k >>= 1;
        if (k) base = base * base;
    }
    return r;
}

FqElem FqElem::frobenius(int k) const {
    const auto& M = F_->frobenius_matrix();
    int n = F_->degree(), p = F_->p();
    std::vector<int> v = c_;
    for (int s = 0; s < k; ++s) {
        std::vector<int> w(n, 0);
        for (int j = 0; j < n; ++j) {
            if (!v[j]) continue;
            for (int i = 0; i < n; ++i) w[i] = (w[i] + M[i][j] * v[j]) % p;
        }
        v = std::move(w);
    }
    return FqElem(F_, std::move(v));
}

bool FqElem::lex_less(const FqElem& other) const {
    return c_ < other.c_;
}

std::string FqElem::str() const {
    if (is_zero()) return "0";
    const std::string& g = F_->gen_name();
    std::ostringstream os;
    bool first = true;
    for (int i = (int)c_.size() - 1; i >= 0; --i) {
        if (!c_[i]) continue;
        if (!first) os << "+";
        first = false;
        if (i == 0) {
            os << c_[i];
        } else {
            if (c_[i] != 1) os << c_[i] << "*";
            os << g;
            if (i > 1) os << "^" << i;
        }
    }
    return os.str();
}

// ---------------------------------------------------------------------------
// Embedding
// ---------------------------------------------------------------------------

Embedding::Embedding(FqFieldPtr from, FqFieldPtr to, FqElem gen_image)
    : from_(std::move(from)), to_(std::move(to)), img_(std::move(gen_image)) {}

Embedding Embedding::least_root(const FqFieldPtr& from, const FqFieldPtr& to) {
    if (from->p() != to->p()) throw std::domain_error("Embedding: different characteristics");
    if (to->degree() % from->degree() != 0)
        throw std::domain_error("Embedding: source degree must divide target degree");
    // roots of the source defining polynomial inside `to`
    std::vector<FqElem> cs;
    cs.reserve(from->defining().size());
    for (int c : from->defining()) cs.push_back(to->from_int(c));
    FqPoly f(to->zero(), std::move(cs));
    std::vector<FqElem> roots = roots_in_field(f);
    if ((int)roots.size() != from->degree())
        throw std::logic_error("Embedding: defining polynomial did not split");
    return Embedding(from, to, roots.front());  // roots_in_field sorts lexicographically
}

void Embedding::build_fwd() const {
    if (!fwd_.empty()) return;
    int nf = from_->degree(), nt = to_->degree();
    fwd_.assign(nt, std::vector<int>(nf, 0));
    FqElem pw = to_->one();
    for (int j = 0; j < nf; ++j) {
        for (int i = 0; i < nt; ++i) fwd_[i][j] = pw.coeffs()[i];
        pw = pw * img_;
    }
}

FqElem Embedding::apply(const FqElem& x) const {
    assert(x.field()->same_field(*from_));
    build_fwd();
    int nf = from_->degree(), nt = to_->degree(), p = to_->p();
    std::vector<int> out(nt, 0);
    for (int j = 0; j < nf; ++j) {
        int v = x.coeffs()[j];
        if (!v) continue;
        for (int i = 0; i < nt; ++i) out[i] = (out[i] + fwd_[i][j] * v) % p;
    }
    return FqElem(to_, std::move(out));
}

std::optional<FqElem> Embedding::preimage(const FqElem& x) const {
    assert(x.field()->same_field(*to_));
    build_fwd();
    int nf = from_->degree(), nt = to_->degree(), p = to_->p();
    // solve fwd * y = x over F_p by Gaussian elimination
    std::vector<std::vector<int>> A(nt, std::vector<int>(nf + 1, 0));
    for (int i = 0; i < nt; ++i) {
        for (int j = 0; j < nf; ++j) A[i][j] = fwd_[i][j];
        A[i][nf] = x.coeffs()[i];
    }
    auto inv_mod_p = [p](int v) {
        int r = 1, e = p - 2, base = ((v % p) + p) % p;
        while (e > 0) {
            if (e & 1) r = r * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return r;
    };
    std::vector<int> pivot_col(nt, -1);
    int row = 0;
    for (int col = 0; col < nf && row < nt; ++col) {
        int pr = -1;
        for (int i = row; i < nt; ++i)
            if (A[i][col]) { pr = i; break; }
        if (pr < 0) continue;
        std::swap(A[row], A[pr]);
        int inv = inv_mod_p(A[row][col]);
        for (int j = col; j <= nf; ++j) A[row][j] = A[row][j] * inv % p;
        for (int i = 0; i < nt; ++i) {
            if (i == row || !A[i][col]) continue;
            int f = A[i][col];
            for (int j = col; j <= nf; ++j) A[i][j] = ((A[i][j] - f * A[row][j]) % p + p) % p;
        }
        pivot_col[row] = col;
        ++row;
    }
    for (int i = row; i < nt; ++i)
        if (A[i][nf]) return std::nullopt;  // inconsistent: not in subfield
    std::vector<int> y(nf, 0);
    for (int i = 0; i < row; ++i)
        if (pivot_col[i] >= 0) y[pivot_col[i]] = A[i][nf];
    FqElem cand = from_->element(y);
    // verify (guards against non-injective data bugs)
    if (!(apply(cand) == x)) return std::nullopt;
    return cand;
}

Embedding embedding_between(const FqFieldPtr& from, const FqFieldPtr& to) {
    if (from->same_field(*to)) return Embedding(from, to, to->gen());
    return Embedding::least_root(from, to);
}

} // namespace cmot
