#include "cmot/matrix.hpp"

namespace cmot {

namespace detail {
void subsets_rec(int n, int k, int start, std::vector<int>& cur,
                 std::vector<std::vector<int>>& out) {
    if ((int)cur.size() == k) {
        out.push_back(cur);
        return;
    }
    for (int i = start; i <= n - (k - (int)cur.size()); ++i) {
        cur.push_back(i);
        subsets_rec(n, k, i + 1, cur, out);
        cur.pop_back();
    }
}
} // namespace detail

std::vector<std::vector<int>> sorted_subsets(int n, int k) {
    std::vector<std::vector<int>> out;
    if (k < 0 || k > n) return out;
    std::vector<int> cur;
    detail::subsets_rec(n, k, 0, cur, out);
    return out;
}

} // namespace cmot
