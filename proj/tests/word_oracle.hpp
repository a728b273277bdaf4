#pragma once

// Naive safety/liveness definitions over words spelled as strings, used as an oracle
// for the bitmap implementation.

#include <set>
#include <string>

namespace word_oracle {

using Words = std::set<std::string>;

inline Words all_words(const std::string& sigma, std::size_t len)
{
    Words out{""};
    for (std::size_t i = 0; i < len; ++i) {
        Words next;
        for (const auto& w : out)
            for (char c : sigma)
                next.insert(w + c);
        out = next;
    }
    return out;
}

inline bool has_completion(const Words& p, const std::string& prefix)
{
    for (const auto& w : p)
        if (w.compare(0, prefix.size(), prefix) == 0)
            return true;
    return false;
}

inline bool oracle_is_safety(const Words& p, const Words& universe, std::size_t len)
{
    for (const auto& u : universe) {
        if (p.contains(u))
            continue;
        bool refuted = false;
        for (std::size_t m = 0; m < len; ++m)
            refuted = refuted || !has_completion(p, u.substr(0, m));
        if (!refuted)
            return false;
    }
    return true;
}

inline bool oracle_is_liveness(const Words& p, const std::string& sigma, std::size_t len)
{
    for (std::size_t m = 0; m < len; ++m)
        for (const auto& b : all_words(sigma, m))
            if (!has_completion(p, b))
                return false;
    return true;
}

inline Words oracle_closure(const Words& p, const Words& universe, std::size_t len)
{
    Words out;
    for (const auto& u : universe) {
        bool ok = true;
        for (std::size_t m = 0; m < len; ++m)
            ok = ok && has_completion(p, u.substr(0, m));
        if (ok)
            out.insert(u);
    }
    return out;
}

} // namespace word_oracle
