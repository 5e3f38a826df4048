#pragma once

// Gait DSL: groups in braces joined by '<', e.g. "{1,4}<{2,3}".  Whitespace is
// ignored; leg indices are 1-based.

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "tropgait/gait.hpp"

namespace tropgait {

class GaitDslParser {
public:
    explicit GaitDslParser(std::string_view text) : text_(text) {}

    Gait parse() {
        std::vector<LegGroup> groups;
        groups.push_back(parse_group());
        skip_space();
        while (pos_ < text_.size()) {
            expect('<');
            groups.push_back(parse_group());
            skip_space();
        }
        return Gait(std::move(groups));
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw error(errc::parse_error, what + " at position " + std::to_string(pos_));
    }

    void skip_space() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    void expect(char c) {
        skip_space();
        if (pos_ >= text_.size() || text_[pos_] != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    std::size_t parse_index() {
        skip_space();
        const std::size_t start = pos_;
        std::size_t value = 0;
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + static_cast<std::size_t>(text_[pos_] - '0');
            if (value > 1'000'000) fail("leg index too large");
            ++pos_;
        }
        if (pos_ == start) fail("expected a leg index");
        return value;
    }

    LegGroup parse_group() {
        expect('{');
        LegGroup group;
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == '}') {
            ++pos_;
            return group;  // empty groups are rejected by gait validation
        }
        group.push_back(parse_index());
        skip_space();
        while (pos_ < text_.size() && text_[pos_] == ',') {
            ++pos_;
            group.push_back(parse_index());
            skip_space();
        }
        expect('}');
        return group;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

inline Gait parse_gait_dsl(std::string_view text) { return GaitDslParser(text).parse(); }

inline std::string to_dsl(const Gait& g) {
    std::string out;
    for (std::size_t j = 0; j < g.group_count(); ++j) {
        if (j) out += '<';
        out += '{';
        for (std::size_t i = 0; i < g.group(j).size(); ++i) {
            if (i) out += ',';
            out += std::to_string(g.group(j)[i]);
        }
        out += '}';
    }
    return out;
}

}  // namespace tropgait
