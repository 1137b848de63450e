#include "bundlecalc/parse.hpp"

#include "bundlecalc/error.hpp"

#include <cctype>
#include <charconv>
#include <string>

namespace bundlecalc {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    BundleExpr run() {
        skip_ws();
        if (at_end()) throw ParseError("empty expression", pos_);
        BundleExpr e = parse_sum();
        skip_ws();
        if (!at_end()) throw ParseError(std::string("unexpected '") + peek() + "'", pos_);
        return e;
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const { return at_end() ? '\0' : text_[pos_]; }

    void skip_ws() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_ws();
        if (peek() != c) {
            if (at_end()) throw ParseError(std::string("expected '") + c + "' but input ended", pos_);
            throw ParseError(std::string("expected '") + c + "' but found '" + peek() + "'", pos_);
        }
        ++pos_;
    }

    bool starts_factor() {
        skip_ws();
        const char c = peek();
        return c == '(' || std::isalpha(static_cast<unsigned char>(c)) || std::isdigit(static_cast<unsigned char>(c));
    }

    BundleExpr parse_sum() {
        std::vector<BundleExpr> terms{parse_product()};
        for (;;) {
            skip_ws();
            if (peek() != '+') break;
            ++pos_;
            terms.push_back(parse_product());
        }
        return terms.size() == 1 ? terms.front() : BundleExpr::sum(std::move(terms));
    }

    BundleExpr parse_product() {
        std::vector<BundleExpr> factors{parse_factor()};
        for (;;) {
            skip_ws();
            if (peek() == '*') {
                ++pos_;
                factors.push_back(parse_factor());
            } else if (starts_factor()) {
                factors.push_back(parse_factor());
            } else {
                break;
            }
        }
        return factors.size() == 1 ? factors.front() : BundleExpr::tensor(std::move(factors));
    }

    std::uint64_t parse_nat() {
        const std::size_t start = pos_;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
        if (start == pos_) throw ParseError("expected a number", pos_);
        std::uint64_t value = 0;
        const auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) throw ParseError("number out of range", start);
        if (value > static_cast<std::uint64_t>(INT64_MAX)) throw ParseError("number out of range", start);
        return value;
    }

    std::string_view parse_ident() {
        const std::size_t start = pos_;
        while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_')) ++pos_;
        return text_.substr(start, pos_ - start);
    }

    BundleExpr parse_factor() {
        skip_ws();
        if (at_end()) throw ParseError("unexpected end of expression", pos_);
        const char c = peek();
        if (c == '(') {
            ++pos_;
            BundleExpr inner = parse_sum();
            expect(')');
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return BundleExpr::atom(Generator::trivial(parse_nat()));
        if (!std::isalpha(static_cast<unsigned char>(c))) throw ParseError(std::string("unexpected '") + c + "'", pos_);

        const std::size_t start = pos_;
        const std::string_view name = parse_ident();
        if (name == "lam") return parse_lambda();
        if (name == "iota") return BundleExpr::atom(Generator::iota());
        if (name == "rho") return BundleExpr::atom(Generator::rho());
        if (name == "sigmaL") return BundleExpr::atom(Generator::sigma_l());
        if (name == "sigmaR") return BundleExpr::atom(Generator::sigma_r());
        if (name == "sigma") return BundleExpr::sigma();
        if (name == "Tstar") return BundleExpr::atom(Generator::cotangent());
        if (name == "conj") {
            expect('(');
            BundleExpr inner = parse_sum();
            expect(')');
            return BundleExpr::conj(std::move(inner));
        }
        if (name == "conn") {
            expect('(');
            skip_ws();
            const std::size_t gpos = pos_;
            const auto group = gauge_from_name(parse_ident());
            if (!group) throw ParseError("unknown gauge group (expected U1, U2 or SU3)", gpos);
            expect(')');
            return BundleExpr::atom(Generator::conn(*group));
        }
        if (name.size() > 3 && name.substr(0, 3) == "ext") return parse_ext(name.substr(3), start);
        if (name == "ext") throw ParseError("exterior power needs a degree, e.g. ext2(...)", start);
        throw ParseError("unknown generator '" + std::string(name) + "'", start);
    }

    BundleExpr parse_lambda() {
        skip_ws();
        if (peek() != '^') return BundleExpr::atom(Generator::lambda(1));
        ++pos_;
        skip_ws();
        bool negative = false;
        if (peek() == '-') {
            negative = true;
            ++pos_;
        }
        const auto magnitude = static_cast<std::int64_t>(parse_nat());
        return BundleExpr::atom(Generator::lambda(negative ? -magnitude : magnitude));
    }

    BundleExpr parse_ext(std::string_view digits, std::size_t start) {
        unsigned k = 0;
        const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), k);
        if (ec != std::errc{} || ptr != digits.data() + digits.size())
            throw ParseError("unknown generator 'ext" + std::string(digits) + "'", start);
        if (k == 0) throw ParseError("exterior power degree must be positive", start);
        expect('(');
        BundleExpr inner = parse_sum();
        expect(')');
        return BundleExpr::ext(std::move(inner), k);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

BundleExpr parse(std::string_view text) { return Parser(text).run(); }

} // namespace bundlecalc
