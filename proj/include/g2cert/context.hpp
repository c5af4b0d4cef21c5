#ifndef G2CERT_CONTEXT_HPP
#define G2CERT_CONTEXT_HPP

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "g2cert/errors.hpp"
#include "g2cert/polynomial.hpp"

namespace g2cert {

class RationalExpr;

enum class AtomKind { Coordinate, Constant, Dynamic };

// An algebraic relation atom^power -> replacement; the replacement may only
// reference symbols declared strictly earlier (stratified), which guarantees
// terminating reduction.
struct AlgebraicRelation {
    std::uint32_t power = 0;
    std::shared_ptr<const RationalExpr> replacement;
};

struct Atom {
    SymbolId sym = 0;
    std::string name;
    AtomKind kind = AtomKind::Constant;
    // Derivative with respect to the chart's independent coordinate. Dynamic
    // atoms at the top of a truncated jet chain carry no rule; differentiating
    // them throws MissingDerivativeRule.
    std::shared_ptr<const RationalExpr> dx_rule;
    std::optional<AlgebraicRelation> relation;
    std::size_t stratum = 0;  // declaration index, the stratification order
};

// A chart: ordered coordinates (independent one first) plus an atom registry
// with derivative rules and algebraic relations. Immutable once frozen.
class Context {
public:
    Context() = default;

    const std::string& name() const { return name_; }
    void set_name(std::string n) { name_ = std::move(n); }

    SymbolId declare_coordinate(const std::string& n) {
        SymbolId s = declare(n, AtomKind::Coordinate);
        coords_.push_back(s);
        return s;
    }

    void declare_coordinates(const std::vector<std::string>& names) {
        for (const auto& n : names) declare_coordinate(n);
    }

    SymbolId declare_constant(const std::string& n) { return declare(n, AtomKind::Constant); }

    // Constant with an algebraic relation sym^power -> replacement (an
    // expression over earlier symbols), e.g. a square root of a constant.
    SymbolId declare_algebraic_constant(const std::string& n, std::uint32_t power,
                                        const std::string& replacement);

    // Dynamic atom with derivative rule d(sym)/d(independent) = rule.
    SymbolId declare_dynamic(const std::string& n, const std::string& rule);

    // Dynamic atom without a rule: top of a truncated jet chain.
    SymbolId declare_dynamic_truncated(const std::string& n) {
        return declare(n, AtomKind::Dynamic);
    }

    // Dynamic atom that also satisfies an algebraic relation (e.g. the
    // derivative of an elliptic function, or a radical of a coordinate
    // polynomial).
    SymbolId declare_dynamic_algebraic(const std::string& n, const std::string& rule,
                                       std::uint32_t power, const std::string& replacement);

    // Validates rules and relations; no declarations are allowed afterwards.
    void freeze();
    bool frozen() const { return frozen_; }

    const std::vector<SymbolId>& coordinates() const { return coords_; }
    SymbolId independent() const {
        if (coords_.empty()) throw Error("context has no coordinates");
        return coords_[0];
    }
    std::size_t dimension() const { return coords_.size(); }
    int coordinate_index(SymbolId s) const {
        for (std::size_t i = 0; i < coords_.size(); ++i)
            if (coords_[i] == s) return static_cast<int>(i);
        return -1;
    }

    bool contains(SymbolId s) const { return atoms_.count(s) > 0; }
    const Atom& atom(SymbolId s) const {
        auto it = atoms_.find(s);
        if (it == atoms_.end()) throw UndeclaredSymbol(symbol_name(s));
        return it->second;
    }
    const Atom* find(SymbolId s) const {
        auto it = atoms_.find(s);
        return it == atoms_.end() ? nullptr : &it->second;
    }

    SymbolId symbol(const std::string& n) const {
        SymbolId s = SymbolTable::instance().lookup(n);
        if (s == SymbolTable::npos || !contains(s)) throw UndeclaredSymbol(n);
        return s;
    }

    bool has_relations() const { return !algebraic_.empty(); }
    // Algebraic atoms in stratification order.
    const std::vector<SymbolId>& algebraic_atoms() const { return algebraic_; }

    const std::vector<SymbolId>& declaration_order() const { return order_; }

    // Checks every symbol of p is declared here.
    void check_symbols(const Polynomial& p) const {
        for (SymbolId s : p.variables())
            if (!contains(s)) throw UndeclaredSymbol(symbol_name(s));
    }

private:
    SymbolId declare(const std::string& n, AtomKind kind) {
        if (frozen_) throw Error("context is frozen: cannot declare " + n);
        SymbolId s = intern(n);
        if (atoms_.count(s)) throw Error("symbol already declared: " + n);
        Atom a;
        a.sym = s;
        a.name = n;
        a.kind = kind;
        a.stratum = order_.size();
        atoms_.emplace(s, std::move(a));
        order_.push_back(s);
        return s;
    }

    std::string name_;
    bool frozen_ = false;
    std::vector<SymbolId> coords_;
    std::vector<SymbolId> order_;
    std::vector<SymbolId> algebraic_;
    std::unordered_map<SymbolId, Atom> atoms_;

    friend class ContextBuilderAccess;
    void attach_rule(SymbolId s, std::shared_ptr<const RationalExpr> rule) {
        atoms_.at(s).dx_rule = std::move(rule);
    }
    void attach_relation(SymbolId s, std::uint32_t power,
                         std::shared_ptr<const RationalExpr> repl) {
        atoms_.at(s).relation = AlgebraicRelation{power, std::move(repl)};
        algebraic_.push_back(s);
    }
    void mark_frozen() { frozen_ = true; }

    // Deferred rule texts, parsed at freeze() so rules may reference atoms
    // declared later (relations may not).
    struct PendingRule {
        SymbolId sym;
        std::string text;
    };
    struct PendingRelation {
        SymbolId sym;
        std::uint32_t power;
        std::string text;
    };
    std::vector<PendingRule> pending_rules_;
    std::vector<PendingRelation> pending_relations_;

    friend void freeze_context(Context& ctx);
};

}  // namespace g2cert

#endif
