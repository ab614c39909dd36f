#ifndef CMOT_FQ_HPP
#define CMOT_FQ_HPP

#include <cassert>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cmot {

class FqField;
using FqFieldPtr = std::shared_ptr<const FqField>;

/// Element of a finite field F_{p^n}, stored as a length-n coefficient
/// vector over F_p in the power basis of the field's generator.
class FqElem {
public:
    FqElem() = default;
    FqElem(FqFieldPtr F, std::vector<int> coeffs);

    const FqFieldPtr& field() const { return F_; }
    const std::vector<int>& coeffs() const { return c_; }

    bool is_zero() const;
    bool is_one() const;
    bool is_unit() const { return !is_zero(); }
    /// One of the same field (coefficient-domain protocol for Poly/Matrix).
    FqElem one_like() const;

    /// True when the element lies in the prime field; value() then returns it.
    bool in_prime_field() const;
    int prime_value() const;

    friend FqElem operator+(const FqElem& a, const FqElem& b);
    friend FqElem operator-(const FqElem& a, const FqElem& b);
    friend FqElem operator*(const FqElem& a, const FqElem& b);
    friend FqElem operator-(const FqElem& a);
    friend bool operator==(const FqElem& a, const FqElem& b);
    friend bool operator!=(const FqElem& a, const FqElem& b) { return !(a == b); }

    FqElem inv() const;
    FqElem pow(long long e) const;

    /// p^k-power Frobenius (k-fold application of x -> x^p).
    FqElem frobenius(int k = 1) const;

    /// Lexicographic order on coefficient tuples (c_0,...,c_{n-1});
    /// only meaningful within one field. Used for deterministic choices.
    bool lex_less(const FqElem& other) const;

    std::string str() const;

private:
    FqFieldPtr F_;
    std::vector<int> c_;
    friend class FqField;
};

/// A finite field F_{p^n} presented as F_p[g]/(f) for a monic irreducible f.
class FqField : public std::enable_shared_from_this<FqField> {
public:
    /// Construct with an explicit defining polynomial (verified irreducible).
    static FqFieldPtr make(int p, std::vector<int> defining, std::string gen_name = "g");
    /// The prime field F_p (defining polynomial x).
    static FqFieldPtr prime_field(int p);
    /// Deterministic field of degree n over F_p: least monic irreducible in
    /// the base-p counter order on coefficient vectors.
    static FqFieldPtr canonical(int p, int n, std::string gen_name = "g");

    int p() const { return p_; }
    int degree() const { return n_; }                  // over F_p
    const std::vector<int>& defining() const { return mod_; }
    const std::string& gen_name() const { return gen_name_; }

    FqElem zero() const;
    FqElem one() const;
    FqElem gen() const;
    FqElem from_int(long long v) const;
    FqElem element(std::vector<int> coeffs) const;     // reduced mod p, size <= n

    /// All field elements in lexicographic coefficient order. Only for
    /// small fields (throws if p^n > cap).
    std::vector<FqElem> all_elements(long long cap = 1 << 20) const;

    bool same_field(const FqField& other) const;

    /// n x n matrix over F_p of the p-power Frobenius in the power basis
    /// (cached); column j is g^{jp} reduced.
    const std::vector<std::vector<int>>& frobenius_matrix() const;

private:
    FqField(int p, int n, std::vector<int> mod, std::string gen_name)
        : p_(p), n_(n), mod_(std::move(mod)), gen_name_(std::move(gen_name)) {}

    int p_;
    int n_;
    std::vector<int> mod_;  // monic, degree n, coefficients in [0,p)
    std::string gen_name_;
    mutable std::vector<std::vector<int>> frob_;  // lazily built

    std::vector<int> reduce(std::vector<int> v) const;  // mod (mod_, p)
    friend class FqElem;
    friend FqElem operator*(const FqElem& a, const FqElem& b);
};

/// Field embedding determined by the image of the source generator;
/// constructed via deterministic (lexicographically least) root choice.
class Embedding {
public:
    Embedding() = default;
    Embedding(FqFieldPtr from, FqFieldPtr to, FqElem gen_image);

    /// Least-root embedding from -> to. Requires deg(from) | deg(to).
    static Embedding least_root(const FqFieldPtr& from, const FqFieldPtr& to);

    const FqFieldPtr& from() const { return from_; }
    const FqFieldPtr& to() const { return to_; }
    const FqElem& gen_image() const { return img_; }

    FqElem apply(const FqElem& x) const;
    /// Inverse image if x lies in the embedded subfield.
    std::optional<FqElem> preimage(const FqElem& x) const;

private:
    FqFieldPtr from_, to_;
    FqElem img_;
    // column i of fwd_ is apply(from.gen^i) in to-coordinates
    mutable std::vector<std::vector<int>> fwd_;
    void build_fwd() const;
};

/// Identity-or-least-root embedding helper; identity when fields coincide.
Embedding embedding_between(const FqFieldPtr& from, const FqFieldPtr& to);

} // namespace cmot

#endif
