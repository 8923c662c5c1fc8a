#include "hv/lattice.hpp"

namespace hv {

std::vector<Vertex> ball(double r) {
    std::vector<Vertex> out;
    const int cap = int(std::ceil(r));
    for (int y = -cap; y <= cap; ++y)
        for (int x = -cap; x <= cap; ++x)
            if (double(x) * x + double(y) * y < r * r)
                out.push_back(Vertex{x, y});
    return out;
}

std::vector<Vertex> ball_boundary(double r) {
    std::vector<Vertex> out;
    const int cap = int(std::ceil(r)) + 1;
    for (int y = -cap; y <= cap; ++y)
        for (int x = -cap; x <= cap; ++x)
            if (on_boundary(Vertex{x, y}, r)) out.push_back(Vertex{x, y});
    return out;
}

}  // namespace hv
