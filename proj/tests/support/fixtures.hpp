#pragma once

#include <string>
#include <vector>

#include "sqc/table.hpp"

namespace sqc::testing {

// Demo relation used across the test suites:
//   Year:Num  Result:Text  Driver:Text  Pos:Num
//   1986      won          alice        2
//   1988      won          bob          1
//   1990      lost         carol        3
inline Table t_demo() {
    return table_from_strings("t_demo", {"Year", "Result", "Driver", "Pos"},
                              {{"1986", "won", "alice", "2"},
                               {"1988", "won", "bob", "1"},
                               {"1990", "lost", "carol", "3"}});
}

inline Table one_by_one() {
    return table_from_strings("tiny", {"a"}, {{"x"}});
}

}  // namespace sqc::testing
