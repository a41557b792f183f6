#pragma once

#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace repfam {

using Element = std::uint32_t;

/// Ground set E = {0, ..., n-1} of a uniform matroid.
struct Universe {
    std::size_t n = 0;

    friend bool operator==(const Universe&, const Universe&) = default;
};

/// A subset of a fixed universe stored as a packed bit vector.
///
/// Sets over universes of up to 128 elements live inline; larger universes
/// spill to the heap. Two sets compare equal only if they share the same
/// universe size and the same members.
class ElementSet {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    ElementSet() = default;
    explicit ElementSet(std::size_t universe_size);
    ElementSet(std::size_t universe_size, std::initializer_list<Element> elements);

    /// Throws InputError on an out-of-range or repeated element.
    static ElementSet from_elements(std::size_t universe_size, std::span<const Element> elements);
    static ElementSet full(std::size_t universe_size);

    std::size_t universe_size() const noexcept { return n_; }
    std::size_t size() const noexcept;
    bool empty() const noexcept;
    bool contains(Element e) const noexcept;

    void insert(Element e);
    void erase(Element e);

    bool is_subset_of(const ElementSet& other) const noexcept;
    bool is_disjoint(const ElementSet& other) const noexcept;

    ElementSet& operator|=(const ElementSet& other) noexcept;
    ElementSet& operator&=(const ElementSet& other) noexcept;
    ElementSet& operator-=(const ElementSet& other) noexcept;

    friend ElementSet operator|(ElementSet a, const ElementSet& b) noexcept { return a |= b; }
    friend ElementSet operator&(ElementSet a, const ElementSet& b) noexcept { return a &= b; }
    friend ElementSet operator-(ElementSet a, const ElementSet& b) noexcept { return a -= b; }

    /// Members in ascending order.
    std::vector<Element> elements() const;

    template <class Fn>
    void for_each(Fn&& fn) const {
        for (std::size_t w = 0; w < words_.size(); ++w) {
            Word bits = words_[w];
            while (bits != 0) {
                const auto bit = static_cast<std::size_t>(std::countr_zero(bits));
                fn(static_cast<Element>(w * kWordBits + bit));
                bits &= bits - 1;
            }
        }
    }

    std::span<const Word> words() const noexcept { return {words_.data(), words_.size()}; }

    std::size_t hash() const noexcept;

    /// "{0,2,5}"
    std::string to_string() const;

    friend bool operator==(const ElementSet& a, const ElementSet& b) noexcept;
    /// Orders by universe size, then lexicographically by sorted member list.
    friend std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) noexcept;

private:
    std::size_t n_ = 0;
    boost::container::small_vector<Word, 2> words_;
};

struct ElementSetHash {
    std::size_t operator()(const ElementSet& s) const noexcept { return s.hash(); }
};

}  // namespace repfam
