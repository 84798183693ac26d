#include "layout.hpp"

#include <string>
#include <vector>

namespace etf {

namespace {

// Matrix cell (i, j), 1-based, maps to canvas row 2i-1, column 2j-1; grid
// lines live on the even coordinates.
void draw_box(std::vector<std::string>& canvas, int first, int last) {
    const int top = 2 * (first - 1);
    const int bottom = 2 * last;
    for (int c = top; c <= bottom; ++c) {
        canvas[top][c] = canvas[bottom][c] = '-';
        canvas[c][top] = canvas[c][bottom] = '|';
    }
    canvas[top][top] = canvas[top][bottom] = '+';
    canvas[bottom][top] = canvas[bottom][bottom] = '+';
}

} // namespace

std::string render_block_layout(const DiagonalPartition& p) {
    const int n = 1 << p.k;
    const int side = 2 * n + 1;
    std::vector<std::string> canvas(side, std::string(side, ' '));
    draw_box(canvas, 1, n);
    for (const auto& b : p.blocks) {
        const int size = 1 << (p.k - b.d);
        const int first = (b.q - 1) * size + 1;
        draw_box(canvas, first, first + size - 1);
    }

    std::string out = "diagonal partition layout: k=" + std::to_string(p.k) +
                      ", n=" + std::to_string(n) +
                      ", r=" + std::to_string(p.blocks.size()) + "\n";
    for (const auto& line : canvas) out += line + "\n";
    for (const auto& b : p.blocks) {
        const int size = 1 << (p.k - b.d);
        const int first = (b.q - 1) * size + 1;
        out += "S_{" + std::to_string(b.d) + "," + std::to_string(b.q) + "} = {" +
               std::to_string(first);
        if (size > 1) out += "..." + std::to_string(first + size - 1);
        out += "}\n";
    }
    return out;
}

} // namespace etf
