#pragma once

// Bundle-expression language: generators, syntax trees, and the canonical
// normal form (a multiset of tensor monomials).

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace bundlecalc {

enum class Gauge : std::uint8_t { U1, U2, SU3 };

std::string_view gauge_name(Gauge g);
std::optional<Gauge> gauge_from_name(std::string_view name);

enum class GenKind : std::uint8_t {
    LambdaPow, // λ^z, the electromagnetic line bundle
    Iota,      // ι, electroweak plane bundle
    IotaDet,   // ι^∧2
    Rho,       // ρ, color 3-space bundle
    SigmaL,
    SigmaR,
    Cotangent, // T*
    Trivial,   // product bundle of rank n
    Conn,      // C(δ) for a gauge group
};

// A single bundle generator. Conjugation is only representable on the complex
// generators that are not closed under it (ι, ι^∧2, ρ); λ and σ conjugate into
// other generators, T*, trivial bundles and connection spaces are self-conjugate.
class Generator {
public:
    static Generator lambda(std::int64_t exponent);
    static Generator iota(bool conjugated = false);
    static Generator iota_det(bool conjugated = false);
    static Generator rho(bool conjugated = false);
    static Generator sigma_l();
    static Generator sigma_r();
    static Generator cotangent();
    static Generator trivial(std::uint64_t n);
    static Generator conn(Gauge g);

    GenKind kind() const noexcept { return kind_; }
    bool conjugated() const noexcept { return conjugated_; }
    std::int64_t exponent() const;   // LambdaPow only
    std::uint64_t count() const;     // Trivial only
    Gauge gauge() const;             // Conn only

    // T* and connection spaces are real; everything else is a complex bundle.
    bool is_real() const noexcept { return kind_ == GenKind::Cotangent || kind_ == GenKind::Conn; }

    Generator conjugate() const;

    auto operator<=>(const Generator&) const = default;

private:
    Generator(GenKind kind, bool conjugated, std::int64_t payload)
        : kind_(kind), conjugated_(conjugated), payload_(payload) {}

    GenKind kind_;
    bool conjugated_;
    std::int64_t payload_;
};

// Fibre ranks of the generators. Complex ranks for λ, ι, ρ, σ; real rank for T*.
// Conn(G) has real rank dim G · rank(T*).
struct RankTable {
    std::uint64_t iota = 2;
    std::uint64_t rho = 3;
    std::uint64_t sigma_l = 2;
    std::uint64_t sigma_r = 2;
    std::uint64_t cotangent = 4;
    std::uint64_t dim_u1 = 1;
    std::uint64_t dim_u2 = 4;
    std::uint64_t dim_su3 = 8;

    std::uint64_t dim_group(Gauge g) const;
    std::uint64_t rank_of(const Generator& g) const;

    static const RankTable& standard();
};

// Tagged rank: `real` is set when the value counts real dimensions.
struct Rank {
    std::uint64_t value = 0;
    bool real = false;

    Rank& operator+=(const Rank& other);
    friend Rank operator+(Rank a, const Rank& b) { return a += b; }
    friend bool operator==(const Rank&, const Rank&) = default;
};

class BundleExpr;
struct ExprNode;

// Immutable syntax tree with shared structure.
class BundleExpr {
public:
    static BundleExpr atom(Generator g);
    static BundleExpr sum(std::vector<BundleExpr> terms);
    static BundleExpr tensor(std::vector<BundleExpr> factors);
    static BundleExpr conj(BundleExpr inner);
    static BundleExpr ext(BundleExpr inner, unsigned k);
    static BundleExpr zero();

    // σ = σ_L + σ_R
    static BundleExpr sigma();

    const ExprNode& node() const noexcept { return *node_; }

    friend bool operator==(const BundleExpr& a, const BundleExpr& b);

private:
    explicit BundleExpr(std::shared_ptr<const ExprNode> node) : node_(std::move(node)) {}
    std::shared_ptr<const ExprNode> node_;
};

namespace node {
struct Atom {
    Generator gen;
    friend bool operator==(const Atom&, const Atom&) = default;
};
struct Sum {
    std::vector<BundleExpr> terms;
    friend bool operator==(const Sum&, const Sum&) = default;
};
struct Tensor {
    std::vector<BundleExpr> factors;
    friend bool operator==(const Tensor&, const Tensor&) = default;
};
struct Conj {
    BundleExpr inner;
    friend bool operator==(const Conj&, const Conj&) = default;
};
struct Ext {
    BundleExpr inner;
    unsigned k;
    friend bool operator==(const Ext&, const Ext&) = default;
};
struct Zero {
    friend bool operator==(const Zero&, const Zero&) = default;
};
} // namespace node

struct ExprNode {
    std::variant<node::Atom, node::Sum, node::Tensor, node::Conj, node::Ext, node::Zero> value;
};

// One tensor word: λ^lambda_exp ⊗ (sorted atoms). Atoms never contain λ-powers
// or trivial bundles; those are absorbed into the exponent and the multiplicity.
struct Monomial {
    std::vector<Generator> atoms;
    std::int64_t lambda_exp = 0;

    bool is_unit() const noexcept { return atoms.empty() && lambda_exp == 0; }
    bool has_real() const noexcept;
    bool has_complex() const noexcept; // any complex atom or a non-zero λ-exponent
    std::size_t count(const Generator& g) const;

    Monomial operator*(const Monomial& other) const;
    Monomial conjugate() const;

    auto operator<=>(const Monomial&) const = default;
};

class NormalForm {
public:
    using Terms = std::map<Monomial, std::uint64_t>;

    NormalForm() = default;
    static NormalForm zero() { return {}; }
    static NormalForm one();
    static NormalForm of(Monomial m, std::uint64_t multiplicity = 1);

    const Terms& terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    bool has_atom(GenKind kind) const;

    NormalForm& operator+=(const NormalForm& other);
    friend NormalForm operator+(NormalForm a, const NormalForm& b) { return a += b; }
    friend NormalForm operator*(const NormalForm& a, const NormalForm& b);
    NormalForm scaled(std::uint64_t factor) const;
    NormalForm conjugate() const;

    void add(const Monomial& m, std::uint64_t multiplicity);

    friend bool operator==(const NormalForm&, const NormalForm&) = default;

private:
    Terms terms_;
};

NormalForm normalize(const BundleExpr& e, const RankTable& ranks = RankTable::standard());

Rank fibre_dim(const Monomial& m, const RankTable& ranks = RankTable::standard());
Rank fibre_dim(const NormalForm& nf, const RankTable& ranks = RankTable::standard());
Rank fibre_dim(const BundleExpr& e, const RankTable& ranks = RankTable::standard());

// Conj(e), normalized and converted back to an expression.
BundleExpr conj(const BundleExpr& e);

bool equal_normal(const BundleExpr& a, const BundleExpr& b);

// Exterior power of a normal form; throws DomainError when unsupported.
NormalForm exterior_power(const NormalForm& nf, unsigned k,
                          const RankTable& ranks = RankTable::standard());

BundleExpr to_expr(const NormalForm& nf);

std::string print(const Generator& g);
std::string print(const Monomial& m, std::uint64_t multiplicity = 1);
std::string print(const NormalForm& nf);
std::string print(const BundleExpr& e);

} // namespace bundlecalc
