#include "robin/expression.hpp"

#include "robin/error.hpp"

#include <cctype>
#include <charconv>
#include <string>

#include <fmt/format.h>

namespace robin {

struct Expression::Node {
    enum class Kind { constant, coordinate, negate, add, sub, mul, div } kind;
    double value = 0.0;
    int axis = 0;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;

    double eval(const Point& p) const
    {
        switch (kind) {
        case Kind::constant: return value;
        case Kind::coordinate: return p[static_cast<std::size_t>(axis)];
        case Kind::negate: return -lhs->eval(p);
        case Kind::add: return lhs->eval(p) + rhs->eval(p);
        case Kind::sub: return lhs->eval(p) - rhs->eval(p);
        case Kind::mul: return lhs->eval(p) * rhs->eval(p);
        case Kind::div: return lhs->eval(p) / rhs->eval(p);
        }
        return 0.0;
    }
};

namespace {

using NodePtr = std::shared_ptr<const Expression::Node>;
using Kind = Expression::Node::Kind;

NodePtr make_binary(Kind kind, NodePtr lhs, NodePtr rhs)
{
    auto node = std::make_shared<Expression::Node>();
    node->kind = kind;
    node->lhs = std::move(lhs);
    node->rhs = std::move(rhs);
    return node;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    NodePtr parse()
    {
        NodePtr root = expr();
        skip_space();
        if (pos_ != text_.size())
            fail("unexpected character");
        return root;
    }

private:
    [[noreturn]] void fail(std::string_view what) const
    {
        throw Error(ErrorKind::invalid_argument,
                    fmt::format("expression '{}': {} at position {}", text_, what, pos_));
    }

    void skip_space()
    {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
            ++pos_;
    }

    bool accept(char c)
    {
        skip_space();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    NodePtr expr()
    {
        NodePtr lhs = term();
        for (;;) {
            if (accept('+'))
                lhs = make_binary(Kind::add, lhs, term());
            else if (accept('-'))
                lhs = make_binary(Kind::sub, lhs, term());
            else
                return lhs;
        }
    }

    NodePtr term()
    {
        NodePtr lhs = unary();
        for (;;) {
            if (accept('*'))
                lhs = make_binary(Kind::mul, lhs, unary());
            else if (accept('/'))
                lhs = make_binary(Kind::div, lhs, unary());
            else
                return lhs;
        }
    }

    NodePtr unary()
    {
        if (accept('+'))
            return unary();
        if (accept('-')) {
            auto node = std::make_shared<Expression::Node>();
            node->kind = Kind::negate;
            node->lhs = unary();
            return node;
        }
        return primary();
    }

    NodePtr primary()
    {
        skip_space();
        if (pos_ >= text_.size())
            fail("unexpected end of input");
        if (accept('(')) {
            NodePtr inner = expr();
            if (!accept(')'))
                fail("expected ')'");
            return inner;
        }
        const char c = text_[pos_];
        if (c == 'x' || c == 'y' || c == 'z') {
            ++pos_;
            auto node = std::make_shared<Expression::Node>();
            node->kind = Kind::coordinate;
            node->axis = c - 'x';
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            double value = 0.0;
            const char* first = text_.data() + pos_;
            const auto [end, ec] = std::from_chars(first, text_.data() + text_.size(), value);
            if (ec != std::errc())
                fail("malformed number");
            pos_ += static_cast<std::size_t>(end - first);
            auto node = std::make_shared<Expression::Node>();
            node->kind = Kind::constant;
            node->value = value;
            return node;
        }
        fail("unexpected character");
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

} // namespace

Expression Expression::parse(std::string_view text)
{
    Parser parser(text);
    NodePtr root = parser.parse();
    return Expression(std::string(text), std::move(root));
}

double Expression::operator()(const Point& p) const { return root_->eval(p); }

} // namespace robin
