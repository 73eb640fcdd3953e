#include "tamyiz/network.hpp"

#include <set>

namespace tamyiz {

FriendVote friend_vote(const std::vector<std::string>& friend_names, const GenderModel& model,
                       double threshold) {
    FriendVote vote;
    std::set<std::string> unique(friend_names.begin(), friend_names.end());
    vote.n_friends = unique.size();
    if (unique.empty()) {
        vote.decision = FriendVote::Decision::Abstain;
        return vote;
    }
    for (const auto& name : unique) {
        if (model.predict_name(name).label == GenderLabel::Female) {
            ++vote.n_predicted_female;
        }
    }
    vote.ratio = static_cast<double>(vote.n_predicted_female) / static_cast<double>(vote.n_friends);
    vote.decision = vote.ratio >= threshold ? FriendVote::Decision::Female
                                            : FriendVote::Decision::Male;
    return vote;
}

GenderLabel combined_predict(const UserProfile& user, const GenderModel& model, double tau,
                             double vote_threshold) {
    const Prediction text = model.predict_name(user.username());
    if (text.label == GenderLabel::Male && text.p_male >= tau) {
        return GenderLabel::Male;
    }
    const FriendVote vote = friend_vote(user.friend_names, model, vote_threshold);
    switch (vote.decision) {
        case FriendVote::Decision::Female:
            return GenderLabel::Female;
        case FriendVote::Decision::Male:
            return GenderLabel::Male;
        default:
            return text.label;
    }
}

}  // namespace tamyiz
