#include "liequad/verdict.hpp"

namespace liequad {

std::string_view to_string(Answer a)
{
    switch (a) {
    case Answer::Yes: return "Yes";
    case Answer::No: return "No";
    case Answer::Unknown: return "Unknown";
    }
    return "?";
}

std::string_view to_string(Verdict v)
{
    switch (v) {
    case Verdict::Holds: return "Holds";
    case Verdict::Fails: return "Fails";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

Answer answer_from_zero(ZeroTest z)
{
    switch (z) {
    case ZeroTest::Zero: return Answer::Yes;
    case ZeroTest::NonZero: return Answer::No;
    default: return Answer::Unknown;
    }
}

Verdict verdict_from_answer(Answer a)
{
    switch (a) {
    case Answer::Yes: return Verdict::Holds;
    case Answer::No: return Verdict::Fails;
    default: return Verdict::Unknown;
    }
}

Verdict combine(Verdict a, Verdict b)
{
    if (a == Verdict::Fails || b == Verdict::Fails)
        return Verdict::Fails;
    if (a == Verdict::Unknown || b == Verdict::Unknown)
        return Verdict::Unknown;
    return Verdict::Holds;
}

Answer combine(Answer a, Answer b)
{
    if (a == Answer::No || b == Answer::No)
        return Answer::No;
    if (a == Answer::Unknown || b == Answer::Unknown)
        return Answer::Unknown;
    return Answer::Yes;
}

}  // namespace liequad
