#include "cpabe/policy.h"

#include <cctype>
#include <functional>

#include "cpabe/group.h"

namespace cpabe {

namespace {

enum class Tok { kAttr, kInt, kAnd, kOr, kOf, kLParen, kRParen, kComma, kEnd };

struct Token {
    Tok kind;
    std::string text;
    std::uint64_t value = 0;
    size_t pos = 0;
};

class Lexer {
  public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }

    Token take() {
        Token t = current_;
        advance();
        return t;
    }

  private:
    void advance() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        current_.pos = pos_;
        if (pos_ >= text_.size()) {
            current_.kind = Tok::kEnd;
            current_.text.clear();
            return;
        }
        char c = text_[pos_];
        if (c == '(' || c == ')' || c == ',') {
            current_.kind = c == '(' ? Tok::kLParen : c == ')' ? Tok::kRParen : Tok::kComma;
            current_.text = c;
            ++pos_;
            return;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos_;
            std::uint64_t v = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                if (v < (1ULL << 32)) v = v * 10 + (text_[pos_] - '0');
                ++pos_;
            }
            current_ = {Tok::kInt, std::string(text_.substr(start, pos_ - start)), v, start};
            return;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) {
                ++pos_;
            }
            std::string word(text_.substr(start, pos_ - start));
            std::string lower = word;
            for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
            Tok kind = lower == "and"  ? Tok::kAnd
                       : lower == "or" ? Tok::kOr
                       : lower == "of" ? Tok::kOf
                                       : Tok::kAttr;
            current_ = {kind, std::move(word), 0, start};
            return;
        }
        throw SyntaxError(pos_, std::string("unexpected character '") + c + "'");
    }

    std::string_view text_;
    size_t pos_ = 0;
    Token current_;
};

class Parser {
  public:
    explicit Parser(std::string_view text) : lex_(text) {}

    AccessTree run() {
        tree_.root = parse_or();
        if (lex_.peek().kind != Tok::kEnd) {
            throw SyntaxError(lex_.peek().pos, "trailing input after policy");
        }
        return std::move(tree_);
    }

  private:
    NodeId add_leaf(std::string attr) {
        AccessNode n;
        n.kind = AccessNode::Kind::kLeaf;
        n.threshold = 1;
        n.attribute = std::move(attr);
        tree_.nodes.push_back(std::move(n));
        return static_cast<NodeId>(tree_.nodes.size() - 1);
    }

    NodeId add_gate(std::uint32_t k, std::vector<NodeId> children) {
        AccessNode n;
        n.kind = AccessNode::Kind::kGate;
        n.threshold = k;
        n.children = std::move(children);
        tree_.nodes.push_back(std::move(n));
        return static_cast<NodeId>(tree_.nodes.size() - 1);
    }

    NodeId parse_or() {
        std::vector<NodeId> parts{parse_and()};
        while (lex_.peek().kind == Tok::kOr) {
            lex_.take();
            parts.push_back(parse_and());
        }
        if (parts.size() == 1) return parts[0];
        return add_gate(1, std::move(parts));
    }

    NodeId parse_and() {
        std::vector<NodeId> parts{parse_atom()};
        while (lex_.peek().kind == Tok::kAnd) {
            lex_.take();
            parts.push_back(parse_atom());
        }
        if (parts.size() == 1) return parts[0];
        auto k = static_cast<std::uint32_t>(parts.size());
        return add_gate(k, std::move(parts));
    }

    NodeId parse_atom() {
        Token t = lex_.take();
        switch (t.kind) {
            case Tok::kAttr:
                return add_leaf(std::move(t.text));
            case Tok::kLParen: {
                NodeId inner = parse_or();
                expect(Tok::kRParen, "expected ')'");
                return inner;
            }
            case Tok::kInt: {
                expect(Tok::kOf, "expected 'of' after threshold");
                expect(Tok::kLParen, "expected '(' after 'of'");
                std::vector<NodeId> children{parse_or()};
                while (lex_.peek().kind == Tok::kComma) {
                    lex_.take();
                    children.push_back(parse_or());
                }
                Token close = lex_.take();
                if (close.kind != Tok::kRParen) {
                    throw SyntaxError(close.pos, "expected ',' or ')' in threshold list");
                }
                if (children.size() < 2) {
                    throw SyntaxError(close.pos, "threshold gate needs at least two branches");
                }
                if (t.value < 1 || t.value > children.size()) {
                    throw ThresholdOutOfRange("threshold " + t.text + " out of range 1.." +
                                              std::to_string(children.size()));
                }
                return add_gate(static_cast<std::uint32_t>(t.value), std::move(children));
            }
            case Tok::kEnd:
                throw SyntaxError(t.pos, "unexpected end of policy");
            default:
                throw SyntaxError(t.pos, "unexpected token '" + t.text + "'");
        }
    }

    void expect(Tok kind, const char* message) {
        Token t = lex_.take();
        if (t.kind != kind) throw SyntaxError(t.pos, message);
    }

    Lexer lex_;
    AccessTree tree_;
};

void print_node(const AccessTree& tree, NodeId id, std::string& out) {
    const AccessNode& n = tree.node(id);
    if (n.kind == AccessNode::Kind::kLeaf) {
        out += n.attribute;
        return;
    }
    if (n.children.size() == 1) {
        // a 1-of-1 gate is semantically its child
        print_node(tree, n.children[0], out);
        return;
    }
    auto print_wrapped = [&](NodeId child) {
        bool gate = tree.node(child).kind == AccessNode::Kind::kGate &&
                    tree.node(child).children.size() > 1;
        if (gate) out += '(';
        print_node(tree, child, out);
        if (gate) out += ')';
    };
    if (n.threshold == n.children.size()) {
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += " and ";
            print_wrapped(n.children[i]);
        }
    } else if (n.threshold == 1) {
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += " or ";
            print_wrapped(n.children[i]);
        }
    } else {
        out += std::to_string(n.threshold);
        out += " of (";
        for (size_t i = 0; i < n.children.size(); ++i) {
            if (i) out += ", ";
            print_node(tree, n.children[i], out);
        }
        out += ')';
    }
}

}  // namespace

std::vector<NodeId> AccessTree::leaf_ids() const {
    std::vector<NodeId> out;
    std::function<void(NodeId)> walk = [&](NodeId id) {
        const AccessNode& n = node(id);
        if (n.kind == AccessNode::Kind::kLeaf) {
            out.push_back(id);
        } else {
            for (NodeId c : n.children) walk(c);
        }
    };
    if (!nodes.empty()) walk(root);
    return out;
}

void AccessTree::validate() const {
    if (nodes.empty()) throw Error("empty access tree");
    if (root >= nodes.size()) throw Error("access tree root out of range");
    std::vector<char> seen(nodes.size(), 0);
    std::function<void(NodeId)> walk = [&](NodeId id) {
        if (id >= nodes.size()) throw Error("access tree child out of range");
        if (seen[id]) throw Error("access tree is not a tree");
        seen[id] = 1;
        const AccessNode& n = nodes[id];
        if (n.kind == AccessNode::Kind::kLeaf) {
            if (!n.children.empty()) throw Error("leaf with children");
            if (n.threshold != 1) throw Error("leaf threshold must be 1");
            if (!is_valid_attribute(n.attribute)) throw Error("leaf with invalid attribute token");
        } else {
            if (n.children.empty()) throw Error("gate without children");
            if (n.threshold < 1 || n.threshold > n.children.size()) {
                throw Error("gate threshold out of range");
            }
            for (NodeId c : n.children) walk(c);
        }
    };
    walk(root);
    for (char s : seen) {
        if (!s) throw Error("access tree has unreachable nodes");
    }
}

AccessTree parse_policy(std::string_view text) {
    if (text.empty()) throw SyntaxError(0, "empty policy");
    AccessTree tree = Parser(text).run();
    tree.validate();
    return tree;
}

std::string print_policy(const AccessTree& tree) {
    std::string out;
    print_node(tree, tree.root, out);
    return out;
}

bool satisfies(const AccessTree& tree, const AttributeSet& attrs) {
    std::function<bool(NodeId)> eval = [&](NodeId id) {
        const AccessNode& n = tree.node(id);
        if (n.kind == AccessNode::Kind::kLeaf) return attrs.count(n.attribute) > 0;
        std::uint32_t hits = 0;
        for (NodeId c : n.children) {
            if (eval(c)) ++hits;
        }
        return hits >= n.threshold;
    };
    return eval(tree.root);
}

bool structurally_equal(const AccessTree& a, const AccessTree& b) {
    std::function<bool(NodeId, NodeId)> eq = [&](NodeId x, NodeId y) {
        const AccessNode& nx = a.node(x);
        const AccessNode& ny = b.node(y);
        if (nx.kind != ny.kind || nx.threshold != ny.threshold) return false;
        if (nx.kind == AccessNode::Kind::kLeaf) return nx.attribute == ny.attribute;
        if (nx.children.size() != ny.children.size()) return false;
        for (size_t i = 0; i < nx.children.size(); ++i) {
            if (!eq(nx.children[i], ny.children[i])) return false;
        }
        return true;
    };
    return eq(a.root, b.root);
}

void validate_attribute_set(const AttributeSet& attrs) {
    for (const auto& a : attrs) {
        if (!is_valid_attribute(a)) {
            throw InvalidAttributeToken("invalid attribute token: '" + a + "'");
        }
    }
}

}  // namespace cpabe
