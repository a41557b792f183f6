#include "repfam/family_io.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <istream>
#include <optional>
#include <ostream>
#include <sstream>

#include "repfam/errors.hpp"

namespace repfam {

namespace {

struct Line {
    std::size_t number = 0;
    std::vector<std::string> tokens;
};

// Next non-blank, non-comment line.
std::optional<Line> next_line(std::istream& in, std::size_t& line_no) {
    std::string text;
    while (std::getline(in, text)) {
        ++line_no;
        if (!text.empty() && text.back() == '\r') {
            text.pop_back();
        }
        const auto first = text.find_first_not_of(" \t");
        if (first == std::string::npos || text[first] == '#') {
            continue;
        }
        Line line{line_no, {}};
        std::istringstream tokens(text);
        std::string token;
        while (tokens >> token) {
            line.tokens.push_back(token);
        }
        return line;
    }
    return std::nullopt;
}

std::size_t parse_count(const std::string& token, std::size_t line, const char* what) {
    std::size_t value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, std::string("expected a non-negative integer for ") + what + ", got '" + token + "'");
    }
    return value;
}

double parse_double(const std::string& token, std::size_t line) {
    double value = 0;
    const auto* end = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(token.data(), end, value);
    if (ec != std::errc() || ptr != end) {
        throw ParseError(line, "expected a decimal weight, got '" + token + "'");
    }
    return value;
}

struct ParsedMember {
    ElementSet set;
    std::optional<double> weight;
};

struct ParsedBody {
    Universe universe;
    std::size_t k = 0;
    std::optional<std::size_t> p;  // nullopt for "*"
    std::vector<ParsedMember> members;
    bool weighted = false;
};

ParsedBody parse_body(std::istream& in, bool allow_variable_size) {
    std::size_t line_no = 0;
    auto header = next_line(in, line_no);
    if (!header) {
        throw ParseError(line_no == 0 ? 1 : line_no, "missing header 'n m k p'");
    }
    if (header->tokens.size() != 4) {
        throw ParseError(header->number, "header must have exactly four fields 'n m k p'");
    }
    ParsedBody body;
    body.universe.n = parse_count(header->tokens[0], header->number, "n");
    const std::size_t m = parse_count(header->tokens[1], header->number, "m");
    body.k = parse_count(header->tokens[2], header->number, "k");
    if (header->tokens[3] == "*") {
        if (!allow_variable_size) {
            throw ParseError(header->number, "variable set size '*' is not allowed for a family file");
        }
    } else {
        body.p = parse_count(header->tokens[3], header->number, "p");
    }

    std::optional<bool> weighted;
    while (auto line = next_line(in, line_no)) {
        if (body.members.size() == m) {
            throw ParseError(line->number, "more member lines than the declared m = " + std::to_string(m));
        }
        auto& tokens = line->tokens;
        std::optional<double> weight;
        if (tokens.size() >= 2 && tokens[tokens.size() - 2] == "w") {
            weight = parse_double(tokens.back(), line->number);
            tokens.resize(tokens.size() - 2);
        }
        if (weighted && *weighted != weight.has_value()) {
            throw ParseError(line->number, "either every member carries a weight or none does");
        }
        weighted = weight.has_value();

        ElementSet set(body.universe.n);
        const bool empty_marker = tokens.size() == 1 && tokens[0] == "-";
        if (!empty_marker) {
            if (tokens.empty()) {
                throw ParseError(line->number, "member line has no elements (use '-' for the empty set)");
            }
            for (const auto& token : tokens) {
                const std::size_t e = parse_count(token, line->number, "element id");
                if (e >= body.universe.n) {
                    throw ParseError(line->number, "element id " + token + " is not below n = " +
                                                       std::to_string(body.universe.n));
                }
                if (set.contains(static_cast<Element>(e))) {
                    throw ParseError(line->number, "duplicate element " + token);
                }
                set.insert(static_cast<Element>(e));
            }
        }
        if (body.p && set.size() != *body.p) {
            throw ParseError(line->number, "set has " + std::to_string(set.size()) + " elements, header declares p = " +
                                               std::to_string(*body.p));
        }
        body.members.push_back({std::move(set), weight});
    }
    if (body.members.size() != m) {
        throw ParseError(line_no + 1, "expected " + std::to_string(m) + " member lines, found " +
                                          std::to_string(body.members.size()));
    }
    body.weighted = weighted.value_or(false);
    return body;
}

void write_set_line(std::ostream& out, const ElementSet& set, std::optional<double> weight) {
    if (set.empty()) {
        out << '-';
    } else {
        bool first = true;
        set.for_each([&](Element e) {
            if (!first) {
                out << ' ';
            }
            out << e;
            first = false;
        });
    }
    if (weight) {
        out << " w " << format_weight(*weight);
    }
    out << '\n';
}

std::ifstream open_input(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open '" + path.string() + "'");
    }
    return in;
}

}  // namespace

std::string format_weight(double w) {
    std::array<char, 64> buffer{};
    auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), w);
    return std::string(buffer.data(), ptr);
}

FamilyFile read_family(std::istream& in) {
    ParsedBody body = parse_body(in, /*allow_variable_size=*/false);
    FamilyFile file{body.universe, body.k, WeightedFamily(body.universe.n, *body.p, body.weighted)};
    file.family.reserve(body.members.size());
    for (auto& member : body.members) {
        if (body.weighted) {
            file.family.add(std::move(member.set), *member.weight);
        } else {
            file.family.add(std::move(member.set));
        }
    }
    return file;
}

FamilyFile read_family_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_family(in);
}

void write_family(std::ostream& out, const FamilyFile& file) {
    const auto& family = file.family;
    out << file.universe.n << ' ' << family.size() << ' ' << file.k << ' ' << family.set_size() << '\n';
    for (std::size_t i = 0; i < family.size(); ++i) {
        write_set_line(out, family.member(i), family.weighted() ? std::optional(family.weight(i)) : std::nullopt);
    }
}

std::string format_family(const FamilyFile& file) {
    std::ostringstream out;
    write_family(out, file);
    return out.str();
}

SetSystemFile read_set_system(std::istream& in) {
    ParsedBody body = parse_body(in, /*allow_variable_size=*/true);
    SetSystemFile file{body.universe, body.k, {}};
    file.sets.reserve(body.members.size());
    for (auto& member : body.members) {
        file.sets.push_back(std::move(member.set));
    }
    return file;
}

SetSystemFile read_set_system_file(const std::filesystem::path& path) {
    auto in = open_input(path);
    return read_set_system(in);
}

void write_set_system(std::ostream& out, const SetSystemFile& file) {
    out << file.universe.n << ' ' << file.sets.size() << ' ' << file.k << " *\n";
    for (const auto& set : file.sets) {
        write_set_line(out, set, std::nullopt);
    }
}

}  // namespace repfam
