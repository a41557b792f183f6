#include "repfam/element_set.hpp"

#include <algorithm>

#include "repfam/errors.hpp"

namespace repfam {

namespace {

std::size_t word_count(std::size_t n) { return (n + ElementSet::kWordBits - 1) / ElementSet::kWordBits; }

}  // namespace

ElementSet::ElementSet(std::size_t universe_size) : n_(universe_size), words_(word_count(universe_size), 0) {}

ElementSet::ElementSet(std::size_t universe_size, std::initializer_list<Element> elements)
    : ElementSet(from_elements(universe_size, std::span<const Element>(elements.begin(), elements.size()))) {}

ElementSet ElementSet::from_elements(std::size_t universe_size, std::span<const Element> elements) {
    ElementSet s(universe_size);
    for (Element e : elements) {
        if (e >= universe_size) {
            throw InputError("element " + std::to_string(e) + " outside universe of size " +
                             std::to_string(universe_size));
        }
        if (s.contains(e)) {
            throw InputError("duplicate element " + std::to_string(e));
        }
        s.insert(e);
    }
    return s;
}

ElementSet ElementSet::full(std::size_t universe_size) {
    ElementSet s(universe_size);
    for (std::size_t w = 0; w < s.words_.size(); ++w) {
        s.words_[w] = ~Word{0};
    }
    if (const std::size_t tail = universe_size % kWordBits; tail != 0) {
        s.words_.back() = (Word{1} << tail) - 1;
    }
    return s;
}

std::size_t ElementSet::size() const noexcept {
    std::size_t count = 0;
    for (Word w : words_) {
        count += static_cast<std::size_t>(std::popcount(w));
    }
    return count;
}

bool ElementSet::empty() const noexcept {
    return std::all_of(words_.begin(), words_.end(), [](Word w) { return w == 0; });
}

bool ElementSet::contains(Element e) const noexcept {
    if (e >= n_) {
        return false;
    }
    return ((words_[e / kWordBits] >> (e % kWordBits)) & 1U) != 0;
}

void ElementSet::insert(Element e) {
    if (e >= n_) {
        throw InputError("element " + std::to_string(e) + " outside universe of size " + std::to_string(n_));
    }
    words_[e / kWordBits] |= Word{1} << (e % kWordBits);
}

void ElementSet::erase(Element e) {
    if (e < n_) {
        words_[e / kWordBits] &= ~(Word{1} << (e % kWordBits));
    }
}

bool ElementSet::is_subset_of(const ElementSet& other) const noexcept {
    const std::size_t shared = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < shared; ++w) {
        if ((words_[w] & ~other.words_[w]) != 0) {
            return false;
        }
    }
    for (std::size_t w = shared; w < words_.size(); ++w) {
        if (words_[w] != 0) {
            return false;
        }
    }
    return true;
}

bool ElementSet::is_disjoint(const ElementSet& other) const noexcept {
    const std::size_t shared = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < shared; ++w) {
        if ((words_[w] & other.words_[w]) != 0) {
            return false;
        }
    }
    return true;
}

// Binary operators assume both operands share a universe; extra words of a
// larger right-hand side are ignored.
ElementSet& ElementSet::operator|=(const ElementSet& other) noexcept {
    const std::size_t shared = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < shared; ++w) {
        words_[w] |= other.words_[w];
    }
    return *this;
}

ElementSet& ElementSet::operator&=(const ElementSet& other) noexcept {
    const std::size_t shared = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < shared; ++w) {
        words_[w] &= other.words_[w];
    }
    for (std::size_t w = shared; w < words_.size(); ++w) {
        words_[w] = 0;
    }
    return *this;
}

ElementSet& ElementSet::operator-=(const ElementSet& other) noexcept {
    const std::size_t shared = std::min(words_.size(), other.words_.size());
    for (std::size_t w = 0; w < shared; ++w) {
        words_[w] &= ~other.words_[w];
    }
    return *this;
}

std::vector<Element> ElementSet::elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for_each([&](Element e) { out.push_back(e); });
    return out;
}

std::size_t ElementSet::hash() const noexcept {
    // splitmix-style mixing over the words
    std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
    for (Word w : words_) {
        std::uint64_t z = h + w + 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        h = z ^ (z >> 31);
    }
    return static_cast<std::size_t>(h);
}

std::string ElementSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for_each([&](Element e) {
        if (!first) {
            out += ',';
        }
        out += std::to_string(e);
        first = false;
    });
    out += '}';
    return out;
}

bool operator==(const ElementSet& a, const ElementSet& b) noexcept {
    return a.n_ == b.n_ && std::equal(a.words_.begin(), a.words_.end(), b.words_.begin(), b.words_.end());
}

std::strong_ordering operator<=>(const ElementSet& a, const ElementSet& b) noexcept {
    if (auto cmp = a.n_ <=> b.n_; cmp != 0) {
        return cmp;
    }
    const auto ea = a.elements();
    const auto eb = b.elements();
    return std::lexicographical_compare_three_way(ea.begin(), ea.end(), eb.begin(), eb.end());
}

}  // namespace repfam
