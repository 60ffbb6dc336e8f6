#pragma once

#include "amalg/operator_spec.hpp"

namespace amalg {

// Multiplier symbol: the (signed) coordinate values of a multiplication
// operator. SeqLim symbols carry tail == limit by construction — that is
// exactly the 0-homogeneous continuity a multiplier needs.
struct SupSymbol {
  std::vector<Rat> values;
};

struct SeqSymbol {
  std::vector<Rat> prefix;
  Rat tail;  // doubles as the value at the limit functional
};

struct CentralSymbol {
  std::variant<SupSymbol, SeqSymbol> rep;

  static CentralSymbol sup(std::vector<Rat> values);
  static CentralSymbol seq(std::vector<Rat> prefix, Rat tail);  // trims

  const SupSymbol* as_sup() const { return std::get_if<SupSymbol>(&rep); }
  const SeqSymbol* as_seq() const { return std::get_if<SeqSymbol>(&rep); }
};

bool operator==(const CentralSymbol& a, const CentralSymbol& b);

Rat symbol_sup_abs(const CentralSymbol& h);
CentralSymbol symbol_mul(const CentralSymbol& a, const CentralSymbol& b);

struct CentralDecision {
  std::optional<CentralSymbol> symbol;
  std::optional<Rat> opNorm;  // |h|_inf; asserted equal to the operator norm
};

// T is central (|T| <= lambda * I for some lambda) iff it is a
// multiplication operator: diagonal matrices on FiniteSup, total
// multiplication data on SeqLim (tail == limit value), self-sourced index
// maps. The structural decision is cross-checked against the positivity
// oracle on basis directions.
CentralDecision decide_central(const ModelSpace& s, const OperatorSpec& T);

// The multiplication operator of a symbol: diagonal matrix on FiniteSup,
// multiplication data on SeqLim. decide_central inverts it exactly.
OperatorSpec mult_operator(const ModelSpace& s, const CentralSymbol& h);

}  // namespace amalg
