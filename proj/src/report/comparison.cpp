#include <algorithm>
#include <set>

#include "mriprep/error.hpp"
#include "mriprep/report.hpp"

namespace mriprep {

bool ranks_before(const RunSummary& a, const RunSummary& b) noexcept {
    if (a.test_acc != b.test_acc) return a.test_acc > b.test_acc;
    if (a.test_loss != b.test_loss) return a.test_loss < b.test_loss;
    return a.model < b.model;
}

ComparisonTable comparison_table(const std::vector<RunSummary>& summaries) {
    if (summaries.empty()) fail(ErrorCode::EmptyInput, "no run summaries");
    std::set<std::string> names;
    for (const auto& s : summaries) {
        if (!names.insert(s.model).second) fail(ErrorCode::DuplicateModel, "model '" + s.model + "' appears twice");
    }

    ComparisonTable t;
    t.ranked = summaries;
    std::sort(t.ranked.begin(), t.ranked.end(), ranks_before);
    t.best_model = t.ranked.front().model;

    const std::vector<std::string> columns = {"Train_Acc", "Train_Loss", "Val_Acc", "Val_Loss", "Test_Acc", "Test_Loss"};
    t.data.header = {"Model"};
    t.data.header.insert(t.data.header.end(), columns.begin(), columns.end());
    t.data.header.push_back("Best");
    t.display.header = t.data.header;

    for (const auto& s : t.ranked) {
        const std::string best = s.model == t.best_model ? "*" : "";
        t.data.rows.push_back({s.model, format_real(s.train_acc), format_real(s.train_loss), format_real(s.val_acc),
                               format_real(s.val_loss), format_real(s.test_acc), format_real(s.test_loss), best});
        t.display.rows.push_back({s.model, format_percent(s.train_acc), format_fixed(s.train_loss, 3),
                                  format_percent(s.val_acc), format_fixed(s.val_loss, 3), format_percent(s.test_acc),
                                  format_fixed(s.test_loss, 3), best});
    }
    return t;
}

}  // namespace mriprep
