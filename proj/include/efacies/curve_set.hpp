#pragma once

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "efacies/error.hpp"

namespace efacies {

inline constexpr double kDefaultNullValue = -999.25;

inline bool iequals(std::string_view a, std::string_view b) {
    return a.size() == b.size() &&
           std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
               return std::toupper(static_cast<unsigned char>(x)) ==
                      std::toupper(static_cast<unsigned char>(y));
           });
}

/// One log curve. Missing samples hold the set's null value and are flagged in `missing`.
struct Curve {
    std::string mnemonic;
    std::string unit;
    std::string description;
    std::vector<double> values;
    std::vector<bool> missing;

    std::size_t size() const { return values.size(); }
    bool is_missing(std::size_t i) const { return missing[i]; }
    std::size_t missing_count() const {
        return static_cast<std::size_t>(std::count(missing.begin(), missing.end(), true));
    }
};

/// Depth-indexed table of log curves.
///
/// Depth is strictly increasing and in metres. Every curve has one entry per depth.
/// Instances are immutable; the transforms below return new sets.
class CurveSet {
  public:
    CurveSet() = default;

    CurveSet(std::string well_name, std::vector<double> depth, std::vector<Curve> curves,
             double null_value = kDefaultNullValue)
        : well_name_(std::move(well_name)),
          depth_(std::move(depth)),
          curves_(std::move(curves)),
          null_value_(null_value) {
        for (std::size_t i = 1; i < depth_.size(); ++i) {
            if (!(depth_[i] > depth_[i - 1])) {
                throw InputError("curve set depth must be strictly increasing (row " +
                                 std::to_string(i) + ")");
            }
        }
        for (auto& c : curves_) {
            if (c.values.size() != depth_.size()) {
                throw InputError("curve '" + c.mnemonic + "' has " +
                                 std::to_string(c.values.size()) + " samples, expected " +
                                 std::to_string(depth_.size()));
            }
            if (c.missing.empty()) {
                c.missing.resize(c.values.size());
                for (std::size_t i = 0; i < c.values.size(); ++i) {
                    c.missing[i] = c.values[i] == null_value_;
                }
            } else if (c.missing.size() != c.values.size()) {
                throw InputError("curve '" + c.mnemonic + "' mask length mismatch");
            }
            for (std::size_t i = 0; i < c.values.size(); ++i) {
                if (c.missing[i]) c.values[i] = null_value_;
            }
        }
    }

    const std::string& well_name() const { return well_name_; }
    std::span<const double> depth() const { return depth_; }
    const std::vector<Curve>& curves() const { return curves_; }
    double null_value() const { return null_value_; }
    std::size_t rows() const { return depth_.size(); }
    bool empty() const { return depth_.empty(); }

    const Curve* find(std::string_view mnemonic) const {
        for (const auto& c : curves_) {
            if (iequals(c.mnemonic, mnemonic)) return &c;
        }
        return nullptr;
    }
    bool has(std::string_view mnemonic) const { return find(mnemonic) != nullptr; }

    const Curve& at(std::string_view mnemonic) const {
        if (const auto* c = find(mnemonic)) return *c;
        throw MissingCurveError(std::string(mnemonic));
    }

    /// Row index whose depth equals `d` exactly, if any.
    std::optional<std::size_t> row_of(double d) const {
        auto it = std::lower_bound(depth_.begin(), depth_.end(), d);
        if (it == depth_.end() || *it != d) return std::nullopt;
        return static_cast<std::size_t>(it - depth_.begin());
    }

    /// Subset of rows; `rows` must be strictly increasing.
    CurveSet select_rows(std::span<const std::size_t> rows) const {
        std::vector<double> depth;
        depth.reserve(rows.size());
        for (auto r : rows) depth.push_back(depth_.at(r));
        std::vector<Curve> curves;
        curves.reserve(curves_.size());
        for (const auto& c : curves_) {
            Curve out{c.mnemonic, c.unit, c.description, {}, {}};
            out.values.reserve(rows.size());
            out.missing.reserve(rows.size());
            for (auto r : rows) {
                out.values.push_back(c.values[r]);
                out.missing.push_back(c.missing[r]);
            }
            curves.push_back(std::move(out));
        }
        return CurveSet(well_name_, std::move(depth), std::move(curves), null_value_);
    }

    /// Copy with `curve` appended, or replacing a curve of the same mnemonic.
    CurveSet with_curve(Curve curve) const {
        auto curves = curves_;
        auto it = std::find_if(curves.begin(), curves.end(),
                               [&](const Curve& c) { return iequals(c.mnemonic, curve.mnemonic); });
        if (it != curves.end()) {
            *it = std::move(curve);
        } else {
            curves.push_back(std::move(curve));
        }
        return CurveSet(well_name_, depth_, std::move(curves), null_value_);
    }

    friend bool operator==(const CurveSet& a, const CurveSet& b) {
        if (a.depth_ != b.depth_ || a.curves_.size() != b.curves_.size()) return false;
        for (std::size_t j = 0; j < a.curves_.size(); ++j) {
            const auto& x = a.curves_[j];
            const auto& y = b.curves_[j];
            if (x.mnemonic != y.mnemonic || x.values != y.values || x.missing != y.missing) {
                return false;
            }
        }
        return true;
    }

  private:
    std::string well_name_;
    std::vector<double> depth_;
    std::vector<Curve> curves_;
    double null_value_ = kDefaultNullValue;
};

/// Curves used as clustering features plus the optional washout inputs.
struct CurveSelection {
    std::vector<std::string> mnemonics;
    std::optional<std::string> caliper_mnemonic;
    std::optional<double> bit_size;  // inches

    void validate(const CurveSet& cs) const {
        if (mnemonics.empty()) throw ConfigError("curve selection is empty");
        for (std::size_t i = 0; i < mnemonics.size(); ++i) {
            for (std::size_t j = 0; j < i; ++j) {
                if (iequals(mnemonics[i], mnemonics[j])) {
                    throw ConfigError("duplicate feature mnemonic '" + mnemonics[i] + "'");
                }
            }
            if (!cs.has(mnemonics[i])) throw MissingCurveError(mnemonics[i]);
        }
    }
};

}  // namespace efacies
