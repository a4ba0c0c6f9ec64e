#pragma once

#include <algorithm>
#include <cstddef>
#include <iterator>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "roughsig/errors.hpp"
#include "roughsig/words.hpp"

namespace roughsig {

// A rooted tree with vertex labels in {1, ..., d}. Children form a multiset:
// trees that differ only in the order of branches are the same tree, and the
// canonical key below makes that identification explicit.
struct Tree {
    int label = 0;
    std::vector<Tree> children;
};

// A forest is a multiset of trees; the empty forest is the algebra unit.
using Forest = std::vector<Tree>;

inline std::string tree_key(const Tree& t) {
    std::string key = std::to_string(t.label);
    if (t.children.empty()) return key;
    std::vector<std::string> parts;
    parts.reserve(t.children.size());
    for (const auto& c : t.children) parts.push_back(tree_key(c));
    std::sort(parts.begin(), parts.end());
    key += '(';
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) key += ',';
        key += parts[i];
    }
    key += ')';
    return key;
}

inline std::string forest_key(const Forest& f) {
    std::vector<std::string> parts;
    parts.reserve(f.size());
    for (const auto& t : f) parts.push_back(tree_key(t));
    std::sort(parts.begin(), parts.end());
    std::string key;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) key += ' ';
        key += parts[i];
    }
    return key;
}

// Read-only index of every labelled forest with at most max_vertices
// vertices. Trees are stored as (root label, child-forest id) pairs, which
// is already a canonical form; forests are ascending id multisets. The
// coproduct of each forest is tabulated once, with integer coefficients,
// using the root-grafting recursion. Table growth is the labelled
// rooted-forest count, hence the small vertex cap.
class ForestTable {
public:
    struct TreeEntry {
        int label = 0;
        int children = 0;   // forest id of the branches over the root
        int size = 0;
        int as_forest = 0;  // forest id of the singleton forest {tree}
        std::string key;
    };
    struct CutTerm {
        int left = 0;   // pruned branches
        int right = 0;  // remaining trunk
        long long coeff = 0;
    };
    struct ForestEntry {
        std::vector<int> trees;  // tree ids, ascending
        int size = 0;
        std::string key;
        std::vector<CutTerm> coproduct;
    };

    static constexpr int kMaxVertexCap = 6;

    static std::shared_ptr<const ForestTable> build(int dim, int max_vertices) {
        if (dim < 1) throw InputError("forest table needs dim >= 1");
        if (max_vertices < 1) throw InputError("forest table needs max_vertices >= 1");
        if (max_vertices > kMaxVertexCap)
            throw InputError("forest table capped at " + std::to_string(kMaxVertexCap) +
                             " vertices");
        auto table = std::make_shared<ForestTable>();
        table->dim_ = dim;
        table->max_vertices_ = max_vertices;
        table->construct();
        return table;
    }

    int dim() const { return dim_; }
    int max_vertices() const { return max_vertices_; }

    const std::vector<TreeEntry>& trees() const { return tree_; }
    const std::vector<ForestEntry>& forests() const { return forest_; }
    const std::vector<int>& trees_of_size(int n) const {
        return trees_by_size_.at(static_cast<std::size_t>(n));
    }
    const std::vector<int>& forests_of_size(int n) const {
        return forests_by_size_.at(static_cast<std::size_t>(n));
    }

    int empty_forest() const { return 0; }

    int forest_id(const std::string& key) const {
        auto it = forest_ids_.find(key);
        if (it == forest_ids_.end()) throw InputError("unknown forest '" + key + "'");
        return it->second;
    }

    int tree_id(const std::string& key) const {
        auto it = tree_ids_.find(key);
        if (it == tree_ids_.end()) throw InputError("unknown tree '" + key + "'");
        return it->second;
    }

    int single_vertex(int label) const {
        if (label < 1 || label > dim_)
            throw InputError("vertex label out of range 1.." + std::to_string(dim_));
        return label - 1;
    }

    // Root a label over an existing forest of branches.
    int graft(int label, int branches_fid) const {
        auto it = graft_ids_.find({label, branches_fid});
        if (it == graft_ids_.end()) throw InputError("grafted tree exceeds vertex cap");
        return it->second;
    }

    // Single-branch tree of a word: letters are integrators from innermost
    // to outermost, so the last letter labels the root.
    int ladder(const Word& w) const {
        if (w.empty()) throw InputError("ladder needs a non-empty word");
        if (static_cast<int>(w.size()) > max_vertices_)
            throw InputError("ladder word longer than the vertex cap");
        int fid = 0;
        int tid = -1;
        for (int letter : w) {
            tid = graft(letter, fid);
            fid = tree_[static_cast<std::size_t>(tid)].as_forest;
        }
        return tid;
    }

    // Multiset union; the result must stay within the vertex cap.
    int product(int a, int b) const {
        const auto& fa = forest_[static_cast<std::size_t>(a)];
        const auto& fb = forest_[static_cast<std::size_t>(b)];
        if (fa.size + fb.size > max_vertices_)
            throw InputError("forest product exceeds the vertex cap");
        std::vector<int> merged;
        merged.reserve(fa.trees.size() + fb.trees.size());
        std::merge(fa.trees.begin(), fa.trees.end(), fb.trees.begin(), fb.trees.end(),
                   std::back_inserter(merged));
        return forest_by_trees_.at(merged);
    }

private:
    void construct() {
        ForestEntry empty;
        empty.size = 0;
        forest_.push_back(empty);
        forest_ids_[""] = 0;
        forest_by_trees_[{}] = 0;
        forests_by_size_.assign(static_cast<std::size_t>(max_vertices_) + 1, {});
        trees_by_size_.assign(static_cast<std::size_t>(max_vertices_) + 1, {});
        forests_by_size_[0].push_back(0);
        forest_[0].coproduct.push_back({0, 0, 1});

        for (int n = 1; n <= max_vertices_; ++n) {
            for (int fid : forests_by_size_[static_cast<std::size_t>(n - 1)]) {
                for (int label = 1; label <= dim_; ++label) {
                    TreeEntry t;
                    t.label = label;
                    t.children = fid;
                    t.size = n;
                    t.key = make_tree_key(label, fid);
                    int tid = static_cast<int>(tree_.size());
                    tree_.push_back(t);
                    tree_ids_[t.key] = tid;
                    graft_ids_[{label, fid}] = tid;
                    trees_by_size_[static_cast<std::size_t>(n)].push_back(tid);
                }
            }
            std::vector<int> acc;
            emit_forests(n, 0, acc);
            for (int fid : forests_by_size_[static_cast<std::size_t>(n)])
                tabulate_coproduct(fid);
        }
    }

    std::string make_tree_key(int label, int branches_fid) const {
        const auto& branches = forest_[static_cast<std::size_t>(branches_fid)];
        std::string key = std::to_string(label);
        if (branches.trees.empty()) return key;
        std::vector<std::string> parts;
        parts.reserve(branches.trees.size());
        for (int tid : branches.trees) parts.push_back(tree_[static_cast<std::size_t>(tid)].key);
        std::sort(parts.begin(), parts.end());
        key += '(';
        for (std::size_t i = 0; i < parts.size(); ++i) {
            if (i) key += ',';
            key += parts[i];
        }
        key += ')';
        return key;
    }

    // Non-decreasing tree-id sequences with sizes summing to target, so each
    // multiset shows up exactly once.
    void emit_forests(int target, int min_tid, std::vector<int>& acc) {
        if (target == 0) {
            ForestEntry f;
            f.trees = acc;
            f.size = 0;
            std::vector<std::string> parts;
            for (int tid : acc) {
                f.size += tree_[static_cast<std::size_t>(tid)].size;
                parts.push_back(tree_[static_cast<std::size_t>(tid)].key);
            }
            std::sort(parts.begin(), parts.end());
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) f.key += ' ';
                f.key += parts[i];
            }
            int fid = static_cast<int>(forest_.size());
            forest_.push_back(f);
            forest_ids_[f.key] = fid;
            forest_by_trees_[acc] = fid;
            forests_by_size_[static_cast<std::size_t>(f.size)].push_back(fid);
            if (acc.size() == 1) tree_[static_cast<std::size_t>(acc[0])].as_forest = fid;
            return;
        }
        for (int tid = min_tid; tid < static_cast<int>(tree_.size()); ++tid) {
            if (tree_[static_cast<std::size_t>(tid)].size > target) continue;
            acc.push_back(tid);
            emit_forests(target - tree_[static_cast<std::size_t>(tid)].size, tid, acc);
            acc.pop_back();
        }
    }

    void tabulate_coproduct(int fid) {
        ForestEntry& f = forest_[static_cast<std::size_t>(fid)];
        std::map<std::pair<int, int>, long long> acc;
        if (f.trees.size() == 1) {
            // Root-grafting recursion on the single tree [branches]_label.
            const TreeEntry& t = tree_[static_cast<std::size_t>(f.trees[0])];
            for (const CutTerm& c :
                 forest_[static_cast<std::size_t>(t.children)].coproduct) {
                int trunk = graft(t.label, c.right);
                acc[{c.left, tree_[static_cast<std::size_t>(trunk)].as_forest}] += c.coeff;
            }
            acc[{fid, 0}] += 1;
        } else {
            // Coproduct is an algebra map: split off the first tree.
            int head = tree_[static_cast<std::size_t>(f.trees[0])].as_forest;
            std::vector<int> rest_trees(f.trees.begin() + 1, f.trees.end());
            int rest = forest_by_trees_.at(rest_trees);
            for (const CutTerm& c1 : forest_[static_cast<std::size_t>(head)].coproduct)
                for (const CutTerm& c2 : forest_[static_cast<std::size_t>(rest)].coproduct)
                    acc[{product(c1.left, c2.left), product(c1.right, c2.right)}] +=
                        c1.coeff * c2.coeff;
        }
        f.coproduct.reserve(acc.size());
        for (const auto& [pair, coeff] : acc)
            f.coproduct.push_back({pair.first, pair.second, coeff});
    }

    int dim_ = 0;
    int max_vertices_ = 0;
    std::vector<TreeEntry> tree_;
    std::vector<ForestEntry> forest_;
    std::vector<std::vector<int>> trees_by_size_;
    std::vector<std::vector<int>> forests_by_size_;
    std::map<std::string, int> tree_ids_;
    std::map<std::string, int> forest_ids_;
    std::map<std::pair<int, int>, int> graft_ids_;
    std::map<std::vector<int>, int> forest_by_trees_;
};

// Every canonical forest encoding with at most max_vertices vertices,
// including the empty forest, in size-major order.
inline std::vector<std::string> enumerate_forests(int dim, int max_vertices) {
    auto table = ForestTable::build(dim, max_vertices);
    std::vector<std::string> keys;
    keys.reserve(table->forests().size());
    for (int n = 0; n <= max_vertices; ++n)
        for (int fid : table->forests_of_size(n))
            keys.push_back(table->forests()[static_cast<std::size_t>(fid)].key);
    return keys;
}

} // namespace roughsig
