// csa/permutation.hpp: finite permutation groups and the cycle-gcd invariants.

#pragma once

#include "csa/bigint.hpp"
#include "csa/residue.hpp"

#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

namespace csa {

/// A bijection of {0, ..., d-1}. Text forms (JSON, cycle strings) are 1-based.
class Permutation {
  public:
    using Point = std::uint32_t;

    Permutation() = default;
    /// Throws ValidationError unless `images` is a bijection of {0, ..., d-1}.
    explicit Permutation(std::vector<Point> images);

    static Permutation identity(std::size_t degree);
    /// Image list on {1, ..., d}, as written in setup files.
    static Permutation from_one_based(const std::vector<long> &images);
    /// Disjoint cycles on {1, ..., d}; unmentioned points are fixed.
    static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<long>> &cycles);
    /// Parses "(1 3 5)(2 4 6)" with an explicit degree. "()" is the identity.
    static Permutation parse_cycles(std::size_t degree, const std::string &text);

    std::size_t degree() const noexcept { return images_.size(); }
    Point operator()(Point i) const { return images_[i]; }
    const std::vector<Point> &images() const noexcept { return images_; }

    /// (this * other)(i) = this(other(i)).
    Permutation operator*(const Permutation &other) const;
    Permutation inverse() const;

    bool is_identity() const noexcept;
    /// Orbit sizes of <this> on the points, descending (the cycle type, fixed points included).
    std::vector<std::size_t> cycle_type() const;
    std::size_t order() const;
    std::string to_cycle_string() const;
    std::vector<long> to_one_based() const;

    friend bool operator==(const Permutation &, const Permutation &) = default;
    friend auto operator<=>(const Permutation &, const Permutation &) = default;

  private:
    std::vector<Point> images_;
};

struct PermutationHash {
    std::size_t operator()(const Permutation &p) const noexcept;
};

/// gcd of the orbit sizes of g; divides the degree.
std::size_t cycgcd(const Permutation &g);

struct ConjugacyClass {
    std::size_t representative; // index into GroupTable::elements
    std::vector<std::size_t> members;
};

/// A permutation group listed element by element, with its conjugacy classes.
class GroupTable {
  public:
    std::size_t degree() const noexcept { return degree_; }
    std::size_t order() const noexcept { return elements_.size(); }
    bool is_transitive() const noexcept { return transitive_; }

    const std::vector<Permutation> &elements() const noexcept { return elements_; }
    const std::vector<ConjugacyClass> &classes() const noexcept { return classes_; }
    const std::vector<Permutation> &generators() const noexcept { return generators_; }

    std::size_t class_of_element(std::size_t element_index) const { return class_of_[element_index]; }
    /// Class index of an arbitrary permutation; throws ValidationError if it is not in the group.
    std::size_t class_of(const Permutation &g) const;
    bool contains(const Permutation &g) const { return index_.count(g) != 0; }
    const Permutation &representative(std::size_t class_index) const {
        return elements_[classes_[class_index].representative];
    }
    std::size_t class_size(std::size_t class_index) const { return classes_[class_index].members.size(); }
    /// cycgcd of the class representative (constant on classes).
    std::size_t class_cycgcd(std::size_t class_index) const { return class_cycgcd_[class_index]; }
    std::size_t identity_class() const noexcept { return 0; }

  private:
    friend GroupTable group_closure(const std::vector<Permutation> &, std::size_t, std::size_t);

    std::size_t degree_ = 0;
    bool transitive_ = false;
    std::vector<Permutation> generators_;
    std::vector<Permutation> elements_;
    std::vector<std::size_t> class_of_;
    std::vector<ConjugacyClass> classes_;
    std::vector<std::size_t> class_cycgcd_;
    std::unordered_map<Permutation, std::size_t, PermutationHash> index_;
};

inline constexpr std::size_t kDefaultGroupOrderCap = 1'000'000;

/// Closes the generators under composition and splits the result into conjugacy classes.
///
/// `degree` is used when `generators` is empty (trivial group). Throws ValidationError on
/// degree mismatch and CapExceededError when the group grows past `order_cap` elements.
GroupTable group_closure(const std::vector<Permutation> &generators, std::size_t degree,
                         std::size_t order_cap = kDefaultGroupOrderCap);

/// U = lcm cycgcd(g), u = least prime dividing U*j, beta and the mean of cycgcd over G.
struct InvariantsBundle {
    BigInt U;
    BigInt u;
    Rational beta;
    Rational avg_cycgcd;
};

/// Requires a transitive group and U*j >= 2; throws ValidationError otherwise.
InvariantsBundle invariants_bundle(const GroupTable &group, const BigInt &j, const BigInt &m);

/// Exact rational value per conjugacy class of a shared group table.
class ClassFunction {
  public:
    ClassFunction(std::shared_ptr<const GroupTable> group, std::vector<Rational> values);

    const GroupTable &group() const noexcept { return *group_; }
    const std::shared_ptr<const GroupTable> &group_ptr() const noexcept { return group_; }
    const Rational &operator[](std::size_t class_index) const { return values_[class_index]; }
    const std::vector<Rational> &values() const noexcept { return values_; }
    bool is_constant() const;

  private:
    std::shared_ptr<const GroupTable> group_;
    std::vector<Rational> values_;
};

enum class PsiVariant { Discriminant, Ramified };

/// Parameters of the counting problem: M = d*m*j and the least prime u of U*j.
struct PsiContext {
    BigInt d, m, j, u;
    BigInt M() const { return d * m * j; }
};

/// The Euler-factor class functions.
///
/// Discriminant variant: g_chi(u) where lcm(dm / cycgcd(g), tau) divides M/u, else 0.
/// Ramified variant: c - 1 where c = gcd(j * cycgcd(g), M / tau) divides chi, else -1.
/// Throws ValidationError if tau does not divide M or chi has the wrong modulus.
ClassFunction class_function_psi(std::shared_ptr<const GroupTable> group, PsiVariant variant,
                                 const BigInt &tau, const Residue &chi, const PsiContext &ctx);

/// Class-size weighted mean (1/|G|) sum_g psi(g).
Rational avg(const ClassFunction &psi);

} // namespace csa
