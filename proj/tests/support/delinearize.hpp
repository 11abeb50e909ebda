#pragma once

#include <string>
#include <vector>

#include "sqc/errors.hpp"

namespace sqc::testing {

struct Delinearized {
    std::vector<std::string> headers;
    std::vector<std::vector<std::string>> rows;
};

// Reference de-linearizer for the [HEAD]/[ROW] wire format. Only valid for
// tables whose cells contain none of the special sequences. Cells are
// joined with " | " and the result is right-stripped, so the splitter works
// on '|' and removes exactly one delimiter space from each side.
inline Delinearized delinearize(const std::string& flat) {
    Delinearized out;
    auto split_cells = [](std::string segment) {
        std::vector<std::string> cells;
        std::size_t pos = 0;
        std::vector<std::string> pieces;
        while (true) {
            std::size_t bar = segment.find('|', pos);
            if (bar == std::string::npos) {
                pieces.push_back(segment.substr(pos));
                break;
            }
            pieces.push_back(segment.substr(pos, bar - pos));
            pos = bar + 1;
        }
        for (std::size_t i = 0; i < pieces.size(); ++i) {
            std::string p = std::move(pieces[i]);
            if (i > 0 && !p.empty() && p.front() == ' ') p.erase(0, 1);
            if (i + 1 < pieces.size() && !p.empty() && p.back() == ' ') p.pop_back();
            cells.push_back(std::move(p));
        }
        return cells;
    };

    if (flat.rfind("[HEAD] : ", 0) != 0) throw FormatError("missing [HEAD] marker");
    std::vector<std::size_t> marks;
    std::size_t pos = 9;
    while ((pos = flat.find(" [ROW] ", pos)) != std::string::npos) {
        marks.push_back(pos);
        pos += 7;
    }
    std::size_t head_end = marks.empty() ? flat.size() : marks[0];
    out.headers = split_cells(flat.substr(9, head_end - 9));
    const std::size_t n = out.headers.size();
    for (std::size_t i = 0; i < marks.size(); ++i) {
        std::size_t begin = marks[i] + 7;
        std::size_t end = i + 1 < marks.size() ? marks[i + 1] : flat.size();
        std::string segment = flat.substr(begin, end - begin);
        std::size_t colon = segment.find(" : ");
        std::vector<std::string> cells;
        if (colon != std::string::npos) {
            cells = split_cells(segment.substr(colon + 3));
        } else if (segment.size() >= 2 && segment.substr(segment.size() - 2) == " :") {
            cells = {};  // fully empty single-cell row, right-stripped
        } else {
            throw FormatError("missing row separator");
        }
        while (cells.size() < n) cells.emplace_back();  // right-stripped trailing empties
        out.rows.push_back(std::move(cells));
    }
    return out;
}

}  // namespace sqc::testing
