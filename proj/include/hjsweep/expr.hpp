#ifndef HJSWEEP_EXPR_HPP
#define HJSWEEP_EXPR_HPP

#include <cctype>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace hjsweep {

/// Small arithmetic expression compiler for declarative problem files.
/// Grammar: numbers, variables x and y, pi, + - * / ^ with the usual
/// precedence, unary minus, parentheses, and one- or two-argument calls of
/// sin cos tan asin acos atan sqrt abs exp log sinh cosh tanh min max atan2
/// pow hypot.
class Expr {
  public:
    static Expr compile(const std::string& text) {
        Parser p(text);
        Expr e;
        e.root_ = p.parse_expression();
        p.expect_end();
        return e;
    }

    double operator()(double x, double y) const { return root_->eval(x, y); }

  private:
    struct Node {
        virtual ~Node() = default;
        virtual double eval(double x, double y) const = 0;
    };
    using NodePtr = std::shared_ptr<const Node>;

    struct Const : Node {
        double v;
        explicit Const(double v) : v(v) {}
        double eval(double, double) const override { return v; }
    };
    struct Var : Node {
        bool is_x;
        explicit Var(bool is_x) : is_x(is_x) {}
        double eval(double x, double y) const override { return is_x ? x : y; }
    };
    struct Unary : Node {
        std::function<double(double)> f;
        NodePtr a;
        double eval(double x, double y) const override { return f(a->eval(x, y)); }
    };
    struct Binary : Node {
        std::function<double(double, double)> f;
        NodePtr a, b;
        double eval(double x, double y) const override { return f(a->eval(x, y), b->eval(x, y)); }
    };

    class Parser {
      public:
        explicit Parser(const std::string& s) : s_(s) {}

        NodePtr parse_expression() { return parse_sum(); }

        void expect_end() {
            skip_ws();
            if (pos_ != s_.size())
                throw std::invalid_argument("expression: trailing input at '" + s_.substr(pos_) + "'");
        }

      private:
        NodePtr parse_sum() {
            NodePtr lhs = parse_product();
            for (;;) {
                skip_ws();
                if (consume('+')) lhs = binary(std::plus<double>(), lhs, parse_product());
                else if (consume('-')) lhs = binary(std::minus<double>(), lhs, parse_product());
                else return lhs;
            }
        }
        NodePtr parse_product() {
            NodePtr lhs = parse_power();
            for (;;) {
                skip_ws();
                if (consume('*')) lhs = binary(std::multiplies<double>(), lhs, parse_power());
                else if (consume('/')) lhs = binary(std::divides<double>(), lhs, parse_power());
                else return lhs;
            }
        }
        NodePtr parse_power() {
            NodePtr base = parse_unary();
            skip_ws();
            if (consume('^'))
                return binary([](double a, double b) { return std::pow(a, b); }, base, parse_power());
            return base;
        }
        NodePtr parse_unary() {
            skip_ws();
            if (consume('-')) {
                auto n = std::make_shared<Unary>();
                n->f = [](double v) { return -v; };
                n->a = parse_unary();
                return n;
            }
            (void)consume('+');
            return parse_atom();
        }
        NodePtr parse_atom() {
            skip_ws();
            if (consume('(')) {
                NodePtr inner = parse_sum();
                require(')');
                return inner;
            }
            if (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) {
                std::size_t used = 0;
                const double v = std::stod(s_.substr(pos_), &used);
                pos_ += used;
                return std::make_shared<Const>(v);
            }
            std::string name = parse_name();
            if (name.empty()) throw std::invalid_argument("expression: unexpected input");
            if (name == "x") return std::make_shared<Var>(true);
            if (name == "y") return std::make_shared<Var>(false);
            if (name == "pi") return std::make_shared<Const>(std::numbers::pi);
            if (name == "e") return std::make_shared<Const>(std::numbers::e);

            static const std::map<std::string, double (*)(double)> unary_fns = {
                {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
                {"asin", std::asin}, {"acos", std::acos}, {"atan", std::atan},
                {"sqrt", std::sqrt}, {"abs", std::fabs},  {"exp", std::exp},
                {"log", std::log},   {"sinh", std::sinh}, {"cosh", std::cosh},
                {"tanh", std::tanh},
            };
            static const std::map<std::string, double (*)(double, double)> binary_fns = {
                {"min", [](double a, double b) { return std::fmin(a, b); }},
                {"max", [](double a, double b) { return std::fmax(a, b); }},
                {"atan2", [](double a, double b) { return std::atan2(a, b); }},
                {"pow", [](double a, double b) { return std::pow(a, b); }},
                {"hypot", [](double a, double b) { return std::hypot(a, b); }},
            };
            require('(');
            if (auto it = unary_fns.find(name); it != unary_fns.end()) {
                auto n = std::make_shared<Unary>();
                n->f = it->second;
                n->a = parse_sum();
                require(')');
                return n;
            }
            if (auto it = binary_fns.find(name); it != binary_fns.end()) {
                NodePtr a = parse_sum();
                require(',');
                NodePtr b = parse_sum();
                require(')');
                auto n = std::make_shared<Binary>();
                n->f = it->second;
                n->a = a;
                n->b = b;
                return n;
            }
            throw std::invalid_argument("expression: unknown function '" + name + "'");
        }

        NodePtr binary(std::function<double(double, double)> f, NodePtr a, NodePtr b) {
            auto n = std::make_shared<Binary>();
            n->f = std::move(f);
            n->a = std::move(a);
            n->b = std::move(b);
            return n;
        }
        std::string parse_name() {
            std::string out;
            while (pos_ < s_.size() &&
                   (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
                out.push_back(s_[pos_++]);
            return out;
        }
        void skip_ws() {
            while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
        }
        bool consume(char c) {
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == c) {
                ++pos_;
                return true;
            }
            return false;
        }
        void require(char c) {
            if (!consume(c))
                throw std::invalid_argument(std::string("expression: expected '") + c + "'");
        }

        const std::string& s_;
        std::size_t pos_ = 0;
    };

    NodePtr root_;
};

} // namespace hjsweep

#endif // HJSWEEP_EXPR_HPP
