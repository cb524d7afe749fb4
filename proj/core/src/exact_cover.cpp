#include "gpdf/exact_cover.hpp"

#include <stdexcept>

namespace gpdf {

ExactCover::ExactCover(int primary, int secondary) : primary_(primary), secondary_(secondary) {
    if (primary < 0 || secondary < 0) throw std::invalid_argument("negative item count");
}

int ExactCover::add_option(std::span<const int> items) {
    for (int it : items) {
        if (it < 0 || it >= primary_ + secondary_) throw std::out_of_range("exact cover item out of range");
    }
    option_items_.emplace_back(items.begin(), items.end());
    return static_cast<int>(option_items_.size()) - 1;
}

namespace {

class Links {
public:
    Links(int primary, int secondary, const std::vector<std::vector<int>>& options) : primary_(primary) {
        const int items = primary + secondary;
        const int root = items + 1;
        left_.resize(static_cast<std::size_t>(items + 2));
        right_.resize(left_.size());
        // item i lives at node i+1; node 0 is the root for primaries, node items+1 for secondaries
        for (int i = 0; i <= primary; ++i) {
            left_[static_cast<std::size_t>(i)] = i == 0 ? primary : i - 1;
            right_[static_cast<std::size_t>(i)] = i == primary ? 0 : i + 1;
        }
        for (int i = primary + 1; i <= items; ++i) {
            left_[static_cast<std::size_t>(i)] = i == primary + 1 ? root : i - 1;
            right_[static_cast<std::size_t>(i)] = i == items ? root : i + 1;
        }
        left_[static_cast<std::size_t>(root)] = secondary ? items : root;
        right_[static_cast<std::size_t>(root)] = secondary ? primary + 1 : root;

        top_.assign(static_cast<std::size_t>(items + 1), 0);
        up_.resize(static_cast<std::size_t>(items + 1));
        down_.resize(static_cast<std::size_t>(items + 1));
        len_.assign(static_cast<std::size_t>(items + 1), 0);
        option_of_.assign(static_cast<std::size_t>(items + 1), -1);
        for (int i = 0; i <= items; ++i) {
            up_[static_cast<std::size_t>(i)] = i;
            down_[static_cast<std::size_t>(i)] = i;
        }
        int spacer = push_node(0, -1);
        for (std::size_t o = 0; o < options.size(); ++o) {
            const int first = static_cast<int>(top_.size());
            for (int it : options[o]) {
                const int col = it + 1;
                const int x = push_node(col, static_cast<int>(o));
                up_[static_cast<std::size_t>(x)] = up_[static_cast<std::size_t>(col)];
                down_[static_cast<std::size_t>(x)] = col;
                down_[static_cast<std::size_t>(up_[static_cast<std::size_t>(col)])] = x;
                up_[static_cast<std::size_t>(col)] = x;
                ++len_[static_cast<std::size_t>(col)];
            }
            down_[static_cast<std::size_t>(spacer)] = static_cast<int>(top_.size()) - 1;
            spacer = push_node(0, -1);
            top_[static_cast<std::size_t>(spacer)] = -(static_cast<int>(o) + 1);
            up_[static_cast<std::size_t>(spacer)] = first;
        }
    }

    ExactCover::Result run(const SearchBudget& budget) {
        BudgetMeter meter(budget);
        ExactCover::Result res;
        std::vector<int> chosen;
        const int st = search(meter, chosen);
        res.nodes = meter.nodes();
        if (st == 1) {
            res.status = ExactCover::Status::found;
            for (int x : chosen) res.options.push_back(option_of_[static_cast<std::size_t>(x)]);
        } else {
            res.status = st == 0 ? ExactCover::Status::exhausted : ExactCover::Status::budget_exceeded;
        }
        return res;
    }

private:
    int push_node(int top, int option) {
        top_.push_back(top);
        up_.push_back(0);
        down_.push_back(0);
        option_of_.push_back(option);
        return static_cast<int>(top_.size()) - 1;
    }

    int& U(int x) { return up_[static_cast<std::size_t>(x)]; }
    int& D(int x) { return down_[static_cast<std::size_t>(x)]; }
    int& L(int x) { return left_[static_cast<std::size_t>(x)]; }
    int& R(int x) { return right_[static_cast<std::size_t>(x)]; }
    int T(int x) const { return top_[static_cast<std::size_t>(x)]; }
    int& len(int c) { return len_[static_cast<std::size_t>(c)]; }

    void hide(int p) {
        for (int q = p + 1; q != p;) {
            const int x = T(q);
            if (x <= 0) {
                q = U(q);
                continue;
            }
            D(U(q)) = D(q);
            U(D(q)) = U(q);
            --len(x);
            ++q;
        }
    }

    void unhide(int p) {
        for (int q = p - 1; q != p;) {
            const int x = T(q);
            if (x <= 0) {
                q = D(q);
                continue;
            }
            D(U(q)) = q;
            U(D(q)) = q;
            ++len(x);
            --q;
        }
    }

    void cover(int c) {
        for (int p = D(c); p != c; p = D(p)) hide(p);
        R(L(c)) = R(c);
        L(R(c)) = L(c);
    }

    void uncover(int c) {
        L(R(c)) = c;
        R(L(c)) = c;
        for (int p = U(c); p != c; p = U(p)) unhide(p);
    }

    void cover_others(int x) {
        for (int p = x + 1; p != x;) {
            const int j = T(p);
            if (j <= 0) {
                p = U(p);
                continue;
            }
            cover(j);
            ++p;
        }
    }

    void uncover_others(int x) {
        for (int p = x - 1; p != x;) {
            const int j = T(p);
            if (j <= 0) {
                p = D(p);
                continue;
            }
            uncover(j);
            --p;
        }
    }

    // 1 found, 0 exhausted, -1 budget
    int search(BudgetMeter& meter, std::vector<int>& chosen) {
        if (R(0) == 0) return 1;
        int best = -1;
        int best_len = 0;
        for (int c = R(0); c != 0; c = R(c)) {
            if (best < 0 || len(c) < best_len) {
                best = c;
                best_len = len(c);
                if (best_len == 0) break;
            }
        }
        if (best_len == 0) return 0;
        cover(best);
        int status = 0;
        for (int x = D(best); x != best; x = D(x)) {
            if (!meter.tick()) {
                status = -1;
                break;
            }
            cover_others(x);
            chosen.push_back(x);
            status = search(meter, chosen);
            if (status == 1) {
                uncover_others(x);
                break;
            }
            chosen.pop_back();
            uncover_others(x);
            if (status == -1) break;
        }
        uncover(best);
        return status;
    }

    int primary_;
    std::vector<int> left_, right_;
    std::vector<int> top_, up_, down_, len_, option_of_;
};

}  // namespace

ExactCover::Result ExactCover::solve(const SearchBudget& budget) const {
    Links links(primary_, secondary_, option_items_);
    return links.run(budget);
}

}  // namespace gpdf
