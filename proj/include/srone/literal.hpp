#pragma once

// Element literal syntax shared by every finite ring kind:
//
//   literal := integer | "[" literal ("," literal)* "]" | "(" literal ("," literal)* ")" | "E" digit digit
//
// Integers are residues, lists are matrix rows, tuples are product
// coordinates and "Eij" is the matrix unit shorthand (1-based).

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "srone/error.hpp"

namespace srone {

struct LiteralNode {
    enum class Kind { integer, list, tuple, matrix_unit };

    Kind kind = Kind::integer;
    std::int64_t value = 0;  // integer
    int row = 0, col = 0;    // matrix_unit, 1-based
    std::vector<LiteralNode> items;
    std::size_t offset = 0;
};

namespace detail {

class LiteralParser {
public:
    LiteralParser(std::string_view text, std::size_t base) : text_(text), base_(base) {}

    LiteralNode parse_all() {
        LiteralNode n = parse();
        skip_ws();
        if (pos_ != text_.size()) fail("trailing characters in literal");
        return n;
    }

    LiteralNode parse() {
        skip_ws();
        if (pos_ >= text_.size()) fail("unexpected end of literal");
        LiteralNode node;
        node.offset = base_ + pos_;
        char c = text_[pos_];
        if (c == '[' || c == '(') {
            node.kind = c == '[' ? LiteralNode::Kind::list : LiteralNode::Kind::tuple;
            char close = c == '[' ? ']' : ')';
            ++pos_;
            for (;;) {
                node.items.push_back(parse());
                skip_ws();
                if (pos_ < text_.size() && text_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (pos_ < text_.size() && text_[pos_] == close) {
                    ++pos_;
                    break;
                }
                fail(std::string("expected ',' or '") + close + "'");
            }
            return node;
        }
        if (c == 'E') {
            ++pos_;
            if (pos_ + 2 > text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_])) ||
                !std::isdigit(static_cast<unsigned char>(text_[pos_ + 1])))
                fail("matrix unit needs two digits");
            node.kind = LiteralNode::Kind::matrix_unit;
            node.row = text_[pos_] - '0';
            node.col = text_[pos_ + 1] - '0';
            pos_ += 2;
            return node;
        }
        if (c == '-' || c == '+' || std::isdigit(static_cast<unsigned char>(c))) {
            bool negative = c == '-';
            if (c == '-' || c == '+') ++pos_;
            std::size_t start = pos_;
            std::int64_t v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                if (v > (INT64_MAX - 9) / 10) fail("integer literal too large");
                v = v * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            if (start == pos_) fail("expected digits");
            node.kind = LiteralNode::Kind::integer;
            node.value = negative ? -v : v;
            return node;
        }
        fail(std::string("unexpected character '") + c + "' in literal");
    }

    std::size_t position() const { return pos_; }

private:
    [[noreturn]] void fail(const std::string& what) const { throw ParseError(what, base_ + pos_); }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t base_;
    std::size_t pos_ = 0;
};

}  // namespace detail

/// Parses a complete literal. `base_offset` shifts reported error offsets when
/// the literal is embedded in a larger string.
inline LiteralNode parse_literal(std::string_view text, std::size_t base_offset = 0) {
    return detail::LiteralParser(text, base_offset).parse_all();
}

}  // namespace srone
