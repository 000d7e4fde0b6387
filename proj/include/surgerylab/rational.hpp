#ifndef SURGERYLAB_RATIONAL_HPP
#define SURGERYLAB_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace surgerylab {

// A surgery slope p/q in lowest terms with q >= 0.  (1,0) is the trivial
// filling (infinity).  The normalized representative is unique, so slopes
// compare by field equality.
struct Slope {
    long long p = 1;
    long long q = 0;

    Slope() = default;
    Slope(long long p_, long long q_) : p(p_), q(q_) { normalize(); }

    void normalize() {
        if (p == 0 && q == 0)
            throw std::invalid_argument("slope 0/0 is not a slope");
        long long g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
        p /= g;
        q /= g;
        if (q < 0 || (q == 0 && p < 0)) {
            p = -p;
            q = -q;
        }
    }

    bool is_infinity() const { return q == 0; }

    bool operator==(const Slope&) const = default;

    std::string str() const { return std::to_string(p) + "/" + std::to_string(q); }

    // Parses "p/q", "p" (meaning p/1), or "inf".
    static Slope parse(const std::string& s) {
        if (s == "inf" || s == "1/0") return Slope(1, 0);
        auto slash = s.find('/');
        try {
            if (slash == std::string::npos) return Slope(std::stoll(s), 1);
            long long p = std::stoll(s.substr(0, slash));
            long long q = std::stoll(s.substr(slash + 1));
            return Slope(p, q);
        } catch (const std::invalid_argument&) {
            throw std::invalid_argument("malformed slope: " + s);
        } catch (const std::out_of_range&) {
            throw std::invalid_argument("slope out of range: " + s);
        }
    }

    static bool coprime(long long p, long long q) {
        return std::gcd(p < 0 ? -p : p, q < 0 ? -q : q) == 1;
    }
};

}  // namespace surgerylab

#endif
