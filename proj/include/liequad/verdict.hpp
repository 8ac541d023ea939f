#pragma once

#include "liequad/expr.hpp"

#include <string_view>

namespace liequad {

/// Three-valued answer to a yes/no question that may be undecidable.
enum class Answer { Yes, No, Unknown };

/// Verdict on a theorem hypothesis or conclusion.
enum class Verdict { Holds, Fails, Unknown };

std::string_view to_string(Answer a);
std::string_view to_string(Verdict v);

/// Zero -> Yes, NonZero -> No.
Answer answer_from_zero(ZeroTest z);
Verdict verdict_from_answer(Answer a);

/// Fails dominates, then Unknown.
Verdict combine(Verdict a, Verdict b);
Answer combine(Answer a, Answer b);

}  // namespace liequad
