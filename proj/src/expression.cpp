#include "spectral/expression.hpp"

#include <cctype>
#include <cmath>
#include <cstdlib>
#include <map>
#include <memory>
#include <stdexcept>
#include <vector>

#include "spectral/common.hpp"

namespace spectral {

namespace {

struct Node {
    virtual ~Node() = default;
    virtual double eval(double x) const = 0;
};
using NodePtr = std::shared_ptr<Node>;

struct ConstNode : Node {
    double v;
    explicit ConstNode(double v) : v(v) {}
    double eval(double) const override { return v; }
};
struct VarNode : Node {
    double eval(double x) const override { return x; }
};
struct BinNode : Node {
    char op;
    NodePtr a, b;
    BinNode(char op, NodePtr a, NodePtr b) : op(op), a(std::move(a)), b(std::move(b)) {}
    double eval(double x) const override {
        double u = a->eval(x), v = b->eval(x);
        switch (op) {
            case '+': return u + v;
            case '-': return u - v;
            case '*': return u * v;
            case '/': return u / v;
            case '^': return std::pow(u, v);
        }
        return 0;
    }
};
struct NegNode : Node {
    NodePtr a;
    explicit NegNode(NodePtr a) : a(std::move(a)) {}
    double eval(double x) const override { return -a->eval(x); }
};
struct FunNode : Node {
    double (*f)(double);
    NodePtr a;
    FunNode(double (*f)(double), NodePtr a) : f(f), a(std::move(a)) {}
    double eval(double x) const override { return f(a->eval(x)); }
};

class Parser {
public:
    explicit Parser(const std::string& s) : s_(s) {}

    NodePtr parse() {
        NodePtr e = expr();
        skip_ws();
        if (pos_ != s_.size()) fail("trailing input");
        return e;
    }

private:
    const std::string& s_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& msg) const {
        throw std::invalid_argument("expression parse error at position " +
                                    std::to_string(pos_) + ": " + msg);
    }
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }
    bool eat(char c) {
        skip_ws();
        if (pos_ < s_.size() && s_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }
    char peek() {
        skip_ws();
        return pos_ < s_.size() ? s_[pos_] : '\0';
    }

    NodePtr expr() {
        NodePtr n = term();
        while (true) {
            if (eat('+')) n = std::make_shared<BinNode>('+', n, term());
            else if (eat('-')) n = std::make_shared<BinNode>('-', n, term());
            else return n;
        }
    }
    NodePtr term() {
        NodePtr n = factor();
        while (true) {
            if (eat('*')) n = std::make_shared<BinNode>('*', n, factor());
            else if (eat('/')) n = std::make_shared<BinNode>('/', n, factor());
            else return n;
        }
    }
    NodePtr factor() {
        NodePtr n = unary();
        if (eat('^')) return std::make_shared<BinNode>('^', n, factor());  // right assoc
        return n;
    }
    NodePtr unary() {
        if (eat('-')) return std::make_shared<NegNode>(unary());
        if (eat('+')) return unary();
        return primary();
    }
    NodePtr primary() {
        skip_ws();
        if (pos_ >= s_.size()) fail("unexpected end of input");
        char c = s_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (eat('(')) {
            NodePtr n = expr();
            if (!eat(')')) fail("expected ')'");
            return n;
        }
        fail("unexpected character");
    }
    NodePtr number() {
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        double v = std::strtod(begin, &end);
        if (end == begin) fail("bad number");
        pos_ += static_cast<std::size_t>(end - begin);
        return std::make_shared<ConstNode>(v);
    }
    NodePtr identifier() {
        std::size_t start = pos_;
        while (pos_ < s_.size() &&
               (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
            ++pos_;
        std::string name = s_.substr(start, pos_ - start);
        if (name == "x") return std::make_shared<VarNode>();
        if (name == "pi") return std::make_shared<ConstNode>(kPi);
        if (name == "e") return std::make_shared<ConstNode>(std::exp(1.0));
        static const std::map<std::string, double (*)(double)> funcs = {
            {"sin", std::sin},   {"cos", std::cos},   {"tan", std::tan},
            {"atan", std::atan}, {"exp", std::exp},   {"log", std::log},
            {"sqrt", std::sqrt}, {"abs", std::fabs},  {"sinh", std::sinh},
            {"cosh", std::cosh}, {"tanh", std::tanh}};
        auto it = funcs.find(name);
        if (it == funcs.end()) fail("unknown identifier '" + name + "'");
        if (!eat('(')) fail("expected '(' after function name");
        NodePtr arg = expr();
        if (!eat(')')) fail("expected ')'");
        return std::make_shared<FunNode>(it->second, arg);
    }
};

}  // namespace

std::function<double(double)> parse_expression(const std::string& text) {
    Parser p(text);
    NodePtr root = p.parse();
    return [root](double x) { return root->eval(x); };
}

}  // namespace spectral
