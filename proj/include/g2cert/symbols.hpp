#ifndef G2CERT_SYMBOLS_HPP
#define G2CERT_SYMBOLS_HPP

#include <cstdint>
#include <mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace g2cert {

using SymbolId = std::uint32_t;

// Global interning table. Symbol ids are assigned in registration order and
// define the lexicographic part of the graded-lex monomial order, so canonical
// forms are stable for a fixed construction sequence. Thread-safe.
class SymbolTable {
public:
    static SymbolTable& instance() {
        static SymbolTable t;
        return t;
    }

    SymbolId intern(const std::string& name) {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(name);
        if (it != ids_.end()) return it->second;
        SymbolId id = static_cast<SymbolId>(names_.size());
        names_.push_back(name);
        ids_.emplace(name, id);
        return id;
    }

    // Returns the id if interned, or npos.
    static constexpr SymbolId npos = ~SymbolId(0);
    SymbolId lookup(const std::string& name) const {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ids_.find(name);
        return it == ids_.end() ? npos : it->second;
    }

    std::string name(SymbolId id) const {
        std::lock_guard<std::mutex> lock(mu_);
        return names_.at(id);
    }

private:
    SymbolTable() = default;
    mutable std::mutex mu_;
    std::vector<std::string> names_;
    std::unordered_map<std::string, SymbolId> ids_;
};

inline SymbolId intern(const std::string& name) { return SymbolTable::instance().intern(name); }
inline std::string symbol_name(SymbolId id) { return SymbolTable::instance().name(id); }

}  // namespace g2cert

#endif
