#pragma once
// Direct evaluator over the surface tree for the integer/boolean/array
// fragment used by the normalization differential test. Shares no code with
// the three-address executor.

#include "tracematch/surface.hpp"

#include <map>
#include <stdexcept>

namespace surface_eval {

using namespace tracematch;
namespace S = tracematch::surface;

class Evaluator {
public:
    explicit Evaluator(std::map<std::string, Value> store) : store_(std::move(store)) {}

    const std::map<std::string, Value>& store() const { return store_; }

    void run(const S::Block& b) {
        for (const auto& s : b) {
            if (returned_ || broke_) return;
            stmt(s);
        }
    }

private:
    std::map<std::string, Value> store_;
    bool returned_ = false;
    bool broke_ = false;

    static long long num(const Value& v) { return v.as_int().convert_to<long long>(); }

    void stmt(const S::Stmt& s) {
        if (auto* a = std::get_if<S::Assign>(&s.node)) {
            store_[a->target] = expr(*a->value);
        } else if (auto* a = std::get_if<S::AssignIndex>(&s.node)) {
            Value idx = expr(*a->index);
            Value v = expr(*a->value);
            ValueList xs = store_.at(a->target).as_array();
            xs.at(static_cast<std::size_t>(num(idx))) = v;
            store_[a->target] = Value::array(std::move(xs));
        } else if (auto* i = std::get_if<S::If>(&s.node)) {
            if (expr(*i->cond).as_bool()) run(i->then_block);
            else run(i->else_block);
        } else if (auto* w = std::get_if<S::While>(&s.node)) {
            while (!returned_ && expr(*w->cond).as_bool()) {
                run(w->body);
                if (broke_) {
                    broke_ = false;
                    break;
                }
            }
        } else if (std::holds_alternative<S::Return>(s.node)) {
            returned_ = true;
        } else if (std::holds_alternative<S::Break>(s.node)) {
            broke_ = true;
        } else if (!std::holds_alternative<S::Skip>(s.node)) {
            throw std::logic_error("statement outside the evaluated fragment");
        }
    }

    Value expr(const S::Expr& e) {
        if (auto* l = std::get_if<S::Literal>(&e.node)) return l->value;
        if (auto* v = std::get_if<S::Var>(&e.node)) return store_.at(v->name);
        if (auto* a = std::get_if<S::And>(&e.node))
            return expr(*a->lhs).as_bool() ? expr(*a->rhs) : Value::boolean(false);
        if (auto* o = std::get_if<S::Or>(&e.node))
            return expr(*o->lhs).as_bool() ? Value::boolean(true) : expr(*o->rhs);
        if (auto* ix = std::get_if<S::Index>(&e.node)) {
            Value base = expr(*ix->base);
            return base.as_array().at(static_cast<std::size_t>(num(expr(*ix->index))));
        }
        if (auto* arr = std::get_if<S::ArrayLit>(&e.node)) {
            ValueList xs;
            for (const auto& x : arr->elems) xs.push_back(expr(*x));
            return Value::array(std::move(xs));
        }
        if (auto* u = std::get_if<S::Unary>(&e.node)) {
            Value x = expr(*u->operand);
            switch (u->op) {
                case UnOp::Not: return Value::boolean(!x.as_bool());
                case UnOp::Neg: return Value::integer(-x.as_int());
                case UnOp::Len: return Value::integer(static_cast<long long>(x.as_array().size()));
                default: break;
            }
            throw std::logic_error("unary operator outside the evaluated fragment");
        }
        if (auto* b = std::get_if<S::Binary>(&e.node)) {
            Value x = expr(*b->lhs), y = expr(*b->rhs);
            switch (b->op) {
                case BinOp::Add: return Value::integer(x.as_int() + y.as_int());
                case BinOp::Sub: return Value::integer(x.as_int() - y.as_int());
                case BinOp::Mul: return Value::integer(x.as_int() * y.as_int());
                case BinOp::Eq: return Value::boolean(x == y);
                case BinOp::Ne: return Value::boolean(!(x == y));
                case BinOp::Lt: return Value::boolean(x.as_int() < y.as_int());
                case BinOp::Le: return Value::boolean(x.as_int() <= y.as_int());
                case BinOp::Gt: return Value::boolean(x.as_int() > y.as_int());
                case BinOp::Ge: return Value::boolean(x.as_int() >= y.as_int());
                default: break;
            }
            throw std::logic_error("binary operator outside the evaluated fragment");
        }
        throw std::logic_error("expression outside the evaluated fragment");
    }
};

}  // namespace surface_eval
