#include "bundlecalc/expr.hpp"

#include "bundlecalc/error.hpp"

#include <algorithm>
#include <sstream>

namespace bundlecalc {

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw DomainError("multiplicity overflow");
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw DomainError("multiplicity overflow");
    return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw DomainError("lambda exponent overflow");
    return out;
}

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw DomainError("lambda exponent overflow");
    return out;
}

} // namespace

//---------------------------------------------------------------------------//
// Gauge

std::string_view gauge_name(Gauge g) {
    switch (g) {
    case Gauge::U1: return "U1";
    case Gauge::U2: return "U2";
    case Gauge::SU3: return "SU3";
    }
    return "?";
}

std::optional<Gauge> gauge_from_name(std::string_view name) {
    if (name == "U1") return Gauge::U1;
    if (name == "U2") return Gauge::U2;
    if (name == "SU3") return Gauge::SU3;
    return std::nullopt;
}

//---------------------------------------------------------------------------//
// Generator

Generator Generator::lambda(std::int64_t exponent) { return {GenKind::LambdaPow, false, exponent}; }
Generator Generator::iota(bool conjugated) { return {GenKind::Iota, conjugated, 0}; }
Generator Generator::iota_det(bool conjugated) { return {GenKind::IotaDet, conjugated, 0}; }
Generator Generator::rho(bool conjugated) { return {GenKind::Rho, conjugated, 0}; }
Generator Generator::sigma_l() { return {GenKind::SigmaL, false, 0}; }
Generator Generator::sigma_r() { return {GenKind::SigmaR, false, 0}; }
Generator Generator::cotangent() { return {GenKind::Cotangent, false, 0}; }

Generator Generator::trivial(std::uint64_t n) {
    if (n > static_cast<std::uint64_t>(INT64_MAX)) throw DomainError("trivial bundle rank too large");
    return {GenKind::Trivial, false, static_cast<std::int64_t>(n)};
}

Generator Generator::conn(Gauge g) { return {GenKind::Conn, false, static_cast<std::int64_t>(g)}; }

std::int64_t Generator::exponent() const {
    if (kind_ != GenKind::LambdaPow) throw std::logic_error("exponent() on non-lambda generator");
    return payload_;
}

std::uint64_t Generator::count() const {
    if (kind_ != GenKind::Trivial) throw std::logic_error("count() on non-trivial generator");
    return static_cast<std::uint64_t>(payload_);
}

Gauge Generator::gauge() const {
    if (kind_ != GenKind::Conn) throw std::logic_error("gauge() on non-connection generator");
    return static_cast<Gauge>(payload_);
}

Generator Generator::conjugate() const {
    switch (kind_) {
    case GenKind::LambdaPow: return lambda(checked_mul(payload_, std::int64_t{-1}));
    case GenKind::Iota:
    case GenKind::IotaDet:
    case GenKind::Rho: return {kind_, !conjugated_, payload_};
    case GenKind::SigmaL: return sigma_r();
    case GenKind::SigmaR: return sigma_l();
    case GenKind::Cotangent:
    case GenKind::Trivial:
    case GenKind::Conn: return *this;
    }
    return *this;
}

//---------------------------------------------------------------------------//
// RankTable / Rank

std::uint64_t RankTable::dim_group(Gauge g) const {
    switch (g) {
    case Gauge::U1: return dim_u1;
    case Gauge::U2: return dim_u2;
    case Gauge::SU3: return dim_su3;
    }
    return 0;
}

std::uint64_t RankTable::rank_of(const Generator& g) const {
    switch (g.kind()) {
    case GenKind::LambdaPow: return 1;
    case GenKind::Iota: return iota;
    case GenKind::IotaDet: return 1;
    case GenKind::Rho: return rho;
    case GenKind::SigmaL: return sigma_l;
    case GenKind::SigmaR: return sigma_r;
    case GenKind::Cotangent: return cotangent;
    case GenKind::Trivial: return g.count();
    case GenKind::Conn: return checked_mul(dim_group(g.gauge()), cotangent);
    }
    return 0;
}

const RankTable& RankTable::standard() {
    static const RankTable table{};
    return table;
}

Rank& Rank::operator+=(const Rank& other) {
    if (real == other.real) {
        value = checked_add(value, other.value);
    } else {
        // complex summands count twice once the total is measured in real dimensions
        const std::uint64_t mine = real ? value : checked_mul(value, std::uint64_t{2});
        const std::uint64_t theirs = other.real ? other.value : checked_mul(other.value, std::uint64_t{2});
        value = checked_add(mine, theirs);
        real = true;
    }
    return *this;
}

//---------------------------------------------------------------------------//
// BundleExpr

BundleExpr BundleExpr::atom(Generator g) {
    return BundleExpr(std::make_shared<const ExprNode>(ExprNode{node::Atom{g}}));
}

BundleExpr BundleExpr::sum(std::vector<BundleExpr> terms) {
    if (terms.empty()) throw DomainError("sum needs at least one term");
    return BundleExpr(std::make_shared<const ExprNode>(ExprNode{node::Sum{std::move(terms)}}));
}

BundleExpr BundleExpr::tensor(std::vector<BundleExpr> factors) {
    if (factors.empty()) throw DomainError("tensor product needs at least one factor");
    return BundleExpr(std::make_shared<const ExprNode>(ExprNode{node::Tensor{std::move(factors)}}));
}

BundleExpr BundleExpr::conj(BundleExpr inner) {
    return BundleExpr(std::make_shared<const ExprNode>(ExprNode{node::Conj{std::move(inner)}}));
}

BundleExpr BundleExpr::ext(BundleExpr inner, unsigned k) {
    if (k == 0) throw DomainError("exterior power degree must be positive");
    return BundleExpr(std::make_shared<const ExprNode>(ExprNode{node::Ext{std::move(inner), k}}));
}

BundleExpr BundleExpr::zero() {
    return BundleExpr(std::make_shared<const ExprNode>(ExprNode{node::Zero{}}));
}

BundleExpr BundleExpr::sigma() {
    return sum({atom(Generator::sigma_l()), atom(Generator::sigma_r())});
}

bool operator==(const BundleExpr& a, const BundleExpr& b) {
    return a.node_ == b.node_ || a.node_->value == b.node_->value;
}

//---------------------------------------------------------------------------//
// Monomial

bool Monomial::has_real() const noexcept {
    return std::any_of(atoms.begin(), atoms.end(), [](const Generator& g) { return g.is_real(); });
}

bool Monomial::has_complex() const noexcept {
    return lambda_exp != 0
        || std::any_of(atoms.begin(), atoms.end(), [](const Generator& g) { return !g.is_real(); });
}

std::size_t Monomial::count(const Generator& g) const {
    return static_cast<std::size_t>(std::count(atoms.begin(), atoms.end(), g));
}

Monomial Monomial::operator*(const Monomial& other) const {
    Monomial out;
    out.lambda_exp = checked_add(lambda_exp, other.lambda_exp);
    out.atoms.reserve(atoms.size() + other.atoms.size());
    std::merge(atoms.begin(), atoms.end(), other.atoms.begin(), other.atoms.end(),
               std::back_inserter(out.atoms));
    return out;
}

Monomial Monomial::conjugate() const {
    Monomial out;
    out.lambda_exp = checked_mul(lambda_exp, std::int64_t{-1});
    out.atoms.reserve(atoms.size());
    for (const auto& a : atoms) out.atoms.push_back(a.conjugate());
    std::sort(out.atoms.begin(), out.atoms.end());
    return out;
}

//---------------------------------------------------------------------------//
// NormalForm

NormalForm NormalForm::one() { return of(Monomial{}); }

NormalForm NormalForm::of(Monomial m, std::uint64_t multiplicity) {
    NormalForm nf;
    nf.add(m, multiplicity);
    return nf;
}

bool NormalForm::has_atom(GenKind kind) const {
    for (const auto& [m, mult] : terms_) {
        for (const auto& a : m.atoms)
            if (a.kind() == kind) return true;
    }
    return false;
}

void NormalForm::add(const Monomial& m, std::uint64_t multiplicity) {
    if (multiplicity == 0) return;
    auto [it, inserted] = terms_.try_emplace(m, multiplicity);
    if (!inserted) it->second = checked_add(it->second, multiplicity);
}

NormalForm& NormalForm::operator+=(const NormalForm& other) {
    for (const auto& [m, mult] : other.terms_) add(m, mult);
    return *this;
}

NormalForm operator*(const NormalForm& a, const NormalForm& b) {
    NormalForm out;
    for (const auto& [ma, ka] : a.terms_)
        for (const auto& [mb, kb] : b.terms_) out.add(ma * mb, checked_mul(ka, kb));
    return out;
}

NormalForm NormalForm::scaled(std::uint64_t factor) const {
    NormalForm out;
    for (const auto& [m, mult] : terms_) out.add(m, checked_mul(mult, factor));
    return out;
}

NormalForm NormalForm::conjugate() const {
    NormalForm out;
    for (const auto& [m, mult] : terms_) out.add(m.conjugate(), mult);
    return out;
}

//---------------------------------------------------------------------------//
// Ranks

Rank fibre_dim(const Monomial& m, const RankTable& ranks) {
    std::uint64_t complex_rank = 1;
    std::uint64_t real_rank = 1;
    for (const auto& a : m.atoms) {
        if (a.is_real())
            real_rank = checked_mul(real_rank, ranks.rank_of(a));
        else
            complex_rank = checked_mul(complex_rank, ranks.rank_of(a));
    }
    if (!m.has_real()) return {complex_rank, false};
    if (!m.has_complex()) return {real_rank, true};
    return {checked_mul(checked_mul(complex_rank, real_rank), std::uint64_t{2}), true};
}

Rank fibre_dim(const NormalForm& nf, const RankTable& ranks) {
    Rank total;
    for (const auto& [m, mult] : nf.terms()) {
        Rank r = fibre_dim(m, ranks);
        r.value = checked_mul(r.value, mult);
        total += r;
    }
    return total;
}

Rank fibre_dim(const BundleExpr& e, const RankTable& ranks) { return fibre_dim(normalize(e, ranks), ranks); }

//---------------------------------------------------------------------------//
// Exterior powers

namespace {

Monomial monomial_power(const Monomial& m, unsigned j) {
    Monomial out;
    for (unsigned i = 0; i < j; ++i) out = out * m;
    return out;
}

// Λ^j of a single monomial (multiplicity one).
NormalForm ext_monomial(const Monomial& m, unsigned j, const RankTable& ranks) {
    if (j == 0) return NormalForm::one();
    if (j == 1) return NormalForm::of(m);
    const Rank rank = fibre_dim(m, ranks);
    if (j > rank.value) return NormalForm::zero();

    // Split into rank-one complex twist and the higher-rank atoms.
    Monomial twist;
    twist.lambda_exp = m.lambda_exp;
    std::vector<Generator> higher;
    for (const auto& a : m.atoms) {
        if (!a.is_real() && ranks.rank_of(a) == 1)
            twist.atoms.push_back(a);
        else
            higher.push_back(a);
    }

    if (higher.size() == 1 && !higher.front().is_real()) {
        const Generator& a = higher.front();
        const std::uint64_t n = ranks.rank_of(a);
        Monomial twisted = monomial_power(twist, j);
        if (j == n && a.kind() == GenKind::Iota)
            return NormalForm::of(twisted * Monomial{{Generator::iota_det(a.conjugated())}, 0});
        if (j == n && a.kind() == GenKind::Rho) return NormalForm::of(twisted); // trivialized by Θ
    }
    throw DomainError("unsupported exterior power ext" + std::to_string(j) + "(" + print(m) + ")");
}

// Λ^j(mult · m) by Cauchy expansion over identical summands.
NormalForm ext_multiple(const Monomial& m, std::uint64_t mult, unsigned j, const RankTable& ranks) {
    if (j == 0) return NormalForm::one();
    if (mult == 0) return NormalForm::zero();
    if (mult == 1) return ext_monomial(m, j, ranks);
    const std::uint64_t r = fibre_dim(m, ranks).value;
    if (j > checked_mul(r, mult)) return NormalForm::zero();
    const std::uint64_t rest = checked_mul(r, mult - 1);
    NormalForm out;
    for (unsigned i = 0; i <= j && i <= r; ++i) {
        if (j - i > rest) continue;
        NormalForm head = ext_monomial(m, i, ranks);
        if (head.is_zero()) continue;
        out += head * ext_multiple(m, mult - 1, j - i, ranks);
    }
    return out;
}

NormalForm ext_terms(const std::vector<std::pair<Monomial, std::uint64_t>>& terms, std::size_t index,
                     unsigned k, const RankTable& ranks) {
    if (k == 0) return NormalForm::one();
    if (index == terms.size()) return NormalForm::zero();
    std::uint64_t rest = 0;
    for (std::size_t i = index + 1; i < terms.size(); ++i)
        rest += checked_mul(fibre_dim(terms[i].first, ranks).value, terms[i].second);
    NormalForm out;
    const auto& [m, mult] = terms[index];
    const std::uint64_t own = checked_mul(fibre_dim(m, ranks).value, mult);
    for (unsigned j = 0; j <= k && j <= own; ++j) {
        if (k - j > rest) continue;
        NormalForm head = ext_multiple(m, mult, j, ranks);
        if (head.is_zero()) continue;
        NormalForm tail = ext_terms(terms, index + 1, k - j, ranks);
        if (tail.is_zero()) continue;
        out += head * tail;
    }
    return out;
}

} // namespace

NormalForm exterior_power(const NormalForm& nf, unsigned k, const RankTable& ranks) {
    if (nf.has_atom(GenKind::Conn))
        throw DomainError("exterior power of a connection space is undefined (affine bundle)");
    if (k == 0) return NormalForm::one();
    if (k == 1) return nf;
    if (k > fibre_dim(nf, ranks).value) return NormalForm::zero();
    const std::vector<std::pair<Monomial, std::uint64_t>> terms(nf.terms().begin(), nf.terms().end());
    return ext_terms(terms, 0, k, ranks);
}

//---------------------------------------------------------------------------//
// normalize

namespace {

NormalForm normalize_generator(const Generator& g) {
    switch (g.kind()) {
    case GenKind::LambdaPow: return NormalForm::of(Monomial{{}, g.exponent()});
    case GenKind::Trivial: return NormalForm::one().scaled(g.count());
    default: return NormalForm::of(Monomial{{g}, 0});
    }
}

struct Normalizer {
    const RankTable& ranks;

    NormalForm operator()(const node::Atom& a) const { return normalize_generator(a.gen); }

    NormalForm operator()(const node::Sum& s) const {
        NormalForm out;
        for (const auto& t : s.terms) out += normalize(t, ranks);
        return out;
    }

    NormalForm operator()(const node::Tensor& t) const {
        NormalForm out = NormalForm::one();
        for (const auto& f : t.factors) {
            out = out * normalize(f, ranks);
            if (out.is_zero()) break;
        }
        return out;
    }

    NormalForm operator()(const node::Conj& c) const { return normalize(c.inner, ranks).conjugate(); }

    NormalForm operator()(const node::Ext& e) const {
        return exterior_power(normalize(e.inner, ranks), e.k, ranks);
    }

    NormalForm operator()(const node::Zero&) const { return NormalForm::zero(); }
};

} // namespace

NormalForm normalize(const BundleExpr& e, const RankTable& ranks) {
    return std::visit(Normalizer{ranks}, e.node().value);
}

BundleExpr to_expr(const NormalForm& nf) {
    if (nf.is_zero()) return BundleExpr::zero();
    std::vector<BundleExpr> terms;
    for (const auto& [m, mult] : nf.terms()) {
        std::vector<BundleExpr> factors;
        if (mult != 1) factors.push_back(BundleExpr::atom(Generator::trivial(mult)));
        if (m.lambda_exp != 0) factors.push_back(BundleExpr::atom(Generator::lambda(m.lambda_exp)));
        for (const auto& a : m.atoms) factors.push_back(BundleExpr::atom(a));
        if (factors.empty()) factors.push_back(BundleExpr::atom(Generator::trivial(1)));
        terms.push_back(factors.size() == 1 ? factors.front() : BundleExpr::tensor(std::move(factors)));
    }
    return terms.size() == 1 ? terms.front() : BundleExpr::sum(std::move(terms));
}

BundleExpr conj(const BundleExpr& e) { return to_expr(normalize(BundleExpr::conj(e))); }

bool equal_normal(const BundleExpr& a, const BundleExpr& b) { return normalize(a) == normalize(b); }

//---------------------------------------------------------------------------//
// Printing

std::string print(const Generator& g) {
    const auto wrap = [&](std::string s) { return g.conjugated() ? "conj(" + s + ")" : s; };
    switch (g.kind()) {
    case GenKind::LambdaPow:
        return g.exponent() == 1 ? std::string("lam") : "lam^" + std::to_string(g.exponent());
    case GenKind::Iota: return wrap("iota");
    case GenKind::IotaDet: return wrap("ext2(iota)");
    case GenKind::Rho: return wrap("rho");
    case GenKind::SigmaL: return "sigmaL";
    case GenKind::SigmaR: return "sigmaR";
    case GenKind::Cotangent: return "Tstar";
    case GenKind::Trivial: return std::to_string(g.count());
    case GenKind::Conn: return "conn(" + std::string(gauge_name(g.gauge())) + ")";
    }
    return "?";
}

std::string print(const Monomial& m, std::uint64_t multiplicity) {
    std::vector<std::string> parts;
    if (multiplicity != 1) parts.push_back(std::to_string(multiplicity));
    if (m.lambda_exp != 0) parts.push_back(print(Generator::lambda(m.lambda_exp)));
    for (const auto& a : m.atoms) parts.push_back(print(a));
    if (parts.empty()) return "1";
    std::string out = parts.front();
    for (std::size_t i = 1; i < parts.size(); ++i) out += "*" + parts[i];
    return out;
}

std::string print(const NormalForm& nf) {
    if (nf.is_zero()) return "0";
    std::string out;
    for (const auto& [m, mult] : nf.terms()) {
        if (!out.empty()) out += " + ";
        out += print(m, mult);
    }
    return out;
}

namespace {

struct Printer {
    std::string operator()(const node::Atom& a) const { return print(a.gen); }

    std::string operator()(const node::Sum& s) const {
        std::string out;
        for (const auto& t : s.terms) {
            if (!out.empty()) out += " + ";
            const bool nested = std::holds_alternative<node::Sum>(t.node().value);
            out += nested ? "(" + print(t) + ")" : print(t);
        }
        return out;
    }

    std::string operator()(const node::Tensor& t) const {
        std::string out;
        for (const auto& f : t.factors) {
            if (!out.empty()) out += "*";
            const auto& v = f.node().value;
            const bool wrap = std::holds_alternative<node::Sum>(v) || std::holds_alternative<node::Tensor>(v);
            out += wrap ? "(" + print(f) + ")" : print(f);
        }
        return out;
    }

    std::string operator()(const node::Conj& c) const { return "conj(" + print(c.inner) + ")"; }
    std::string operator()(const node::Ext& e) const {
        return "ext" + std::to_string(e.k) + "(" + print(e.inner) + ")";
    }
    std::string operator()(const node::Zero&) const { return "0"; }
};

} // namespace

std::string print(const BundleExpr& e) { return std::visit(Printer{}, e.node().value); }

} // namespace bundlecalc
