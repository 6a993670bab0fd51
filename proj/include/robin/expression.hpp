#pragma once

#include "robin/mesh.hpp"

#include <memory>
#include <string>
#include <string_view>

namespace robin {

/// Compiled arithmetic expression in the coordinates x, y, z.
///
/// Grammar: expr := term (('+'|'-') term)*; term := unary (('*'|'/') unary)*;
/// unary := ('+'|'-') unary | primary; primary := number | x | y | z | '(' expr ')'.
/// Parsing failures throw Error(invalid_argument) with the offending position.
class Expression {
public:
    static Expression parse(std::string_view text);

    double operator()(const Point& p) const;
    const std::string& text() const noexcept { return text_; }

    struct Node;

private:
    Expression(std::string text, std::shared_ptr<const Node> root)
        : text_(std::move(text)), root_(std::move(root))
    {}

    std::string text_;
    std::shared_ptr<const Node> root_;
};

} // namespace robin
