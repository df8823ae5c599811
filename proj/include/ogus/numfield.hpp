#pragma once

// K = Q(sqrt d) with d squarefree (d = 1 meaning K = Q), its unramified odd
// places, and the embeddings of K into the completions.

#include <string>
#include <vector>

#include <gmpxx.h>

#include "ogus/padic.hpp"

namespace ogus {

class QuadField {
public:
    explicit QuadField(long d = 1);

    long d() const noexcept { return d_; }
    bool is_rational() const noexcept { return d_ == 1; }
    friend bool operator==(const QuadField& a, const QuadField& b) noexcept { return a.d_ == b.d_; }

private:
    long d_;
};

bool is_squarefree(long d);

class QuadraticFieldElement {
public:
    explicit QuadraticFieldElement(QuadField field, mpq_class a = 0, mpq_class b = 0);

    const QuadField& field() const noexcept { return field_; }
    const mpq_class& a() const noexcept { return a_; }
    const mpq_class& b() const noexcept { return b_; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_rational() const { return sgn(b_) == 0; }

    friend QuadraticFieldElement operator+(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
    friend QuadraticFieldElement operator-(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
    friend QuadraticFieldElement operator*(const QuadraticFieldElement& x, const QuadraticFieldElement& y);
    friend bool operator==(const QuadraticFieldElement& x, const QuadraticFieldElement& y)
    {
        return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
    }

    std::string to_string() const;

private:
    QuadField field_;
    mpq_class a_;
    mpq_class b_;
};

enum class PlaceKind { Split, Inert };

struct Place {
    long p = 0;
    int residue_degree = 1;  // n_v
    PlaceKind kind = PlaceKind::Split;

    friend bool operator==(const Place&, const Place&) = default;
};

std::string to_string(const Place& v);

// Throws RamifiedOrEvenPlace when p | 2d, InvalidArgument when p is not prime.
Place classify_place(const QuadField& field, long p);

QuadraticFieldElement galois_conjugate(const QuadraticFieldElement& x);

// The completion K_v at working precision m, with the image of sqrt(d)
// fixed once. At an inert place sqrt(d) is the ring generator g; at a split
// place it is the Hensel lift of the smallest r in [0, p) with r^2 = d mod p.
class LocalField {
public:
    LocalField(QuadField field, Place place, int m);

    const QuadField& field() const noexcept { return field_; }
    const Place& place() const noexcept { return place_; }
    const ContextPtr& context() const noexcept { return ctx_; }
    long p() const noexcept { return place_.p; }
    int n() const noexcept { return place_.residue_degree; }
    const PadicElement& sqrt_d() const noexcept { return sqrt_d_; }

private:
    QuadField field_;
    Place place_;
    ContextPtr ctx_;
    PadicElement sqrt_d_;
};

// Ring homomorphism K ∩ Z_(p) -> W(k_v). Throws DenominatorNotUnit.
PadicElement embed(const QuadraticFieldElement& x, const LocalField& local);
// Rationals with p in the denominator land in K_v.
PadicFraction embed_fraction(const mpq_class& q, const ContextPtr& ctx);
PadicElement embed_rational(const mpq_class& q, const ContextPtr& ctx);

}  // namespace ogus

namespace ogus {

// Dense matrix over K.
class KMatrix {
public:
    KMatrix(QuadField field, std::size_t rows, std::size_t cols)
        : field_(field), rows_(rows), cols_(cols), data_(rows * cols, QuadraticFieldElement(field))
    {
    }

    const QuadField& field() const noexcept { return field_; }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    QuadraticFieldElement& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const QuadraticFieldElement& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    bool is_zero() const;

    // Rational coordinates, row-major by entry, a then b (b omitted for K = Q).
    std::vector<mpq_class> coordinates() const;
    static KMatrix from_coordinates(QuadField field, std::size_t rows, std::size_t cols,
                                    const std::vector<mpq_class>& coords);
    static std::size_t coordinate_count(const QuadField& field, std::size_t rows, std::size_t cols)
    {
        return rows * cols * (field.is_rational() ? 1 : 2);
    }

    friend KMatrix operator*(const KMatrix& x, const KMatrix& y);
    friend bool operator==(const KMatrix& x, const KMatrix& y) = default;

    std::string to_string() const;

private:
    QuadField field_;
    std::size_t rows_;
    std::size_t cols_;
    std::vector<QuadraticFieldElement> data_;
};

}  // namespace ogus
