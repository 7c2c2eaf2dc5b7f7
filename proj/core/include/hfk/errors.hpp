#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hfk {

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Syntactic problem in a .hd stream. `line` is 1-based, 0 if unknown.
class ParseError : public Error {
public:
    ParseError(int line_no, const std::string& what)
        : Error("parse error at line " + std::to_string(line_no) + ": " + what), line(line_no) {}
    int line;
};

// A diagram that violates the structural invariants. Lists every violation found.
class MalformedDiagram : public Error {
public:
    explicit MalformedDiagram(std::vector<std::string> problems)
        : Error(join(problems)), violations(std::move(problems)) {}
    std::vector<std::string> violations;

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s = "malformed diagram:";
        for (const auto& p : v) s += "\n  - " + p;
        return s;
    }
};

class MoveError : public Error {
public:
    using Error::Error;
};
class IllegalFinger : public MoveError { public: using MoveError::MoveError; };
class NotABigon : public MoveError { public: using MoveError::MoveError; };
class ContainsBasepoint : public MoveError { public: using MoveError::MoveError; };
class WouldStrandCurve : public MoveError { public: using MoveError::MoveError; };
class IllegalBand : public MoveError { public: using MoveError::MoveError; };
class NotNonDisk : public MoveError { public: using MoveError::MoveError; };
class AlreadyClose : public MoveError { public: using MoveError::MoveError; };

// A checked postcondition failed; always indicates an implementation bug,
// never a property of valid input.
class AssertionError : public Error {
public:
    using Error::Error;
};
class StuckStep : public AssertionError { public: using AssertionError::AssertionError; };
class IterationCap : public AssertionError { public: using AssertionError::AssertionError; };

// The connection system is not invertible; the diagram does not present S^3.
class SingularSystem : public Error {
public:
    using Error::Error;
};
class NonIntegralGrading : public Error {
public:
    using Error::Error;
};

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw AssertionError(msg);
}

}  // namespace hfk
