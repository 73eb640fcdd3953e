// Gender inference from an account's friends, and the combined predictor.
//
// Friend lists are a homophily signal: the classifier labels each friend
// name, and the account is called Female when at least a threshold share
// (default 1/3, inclusive) of friends are predicted female. The combined
// predictor trusts a confident Male call from the text classifier and asks
// the friend vote otherwise.
#pragma once

#include <string>
#include <vector>

#include "tamyiz/classifier.hpp"
#include "tamyiz/dataset.hpp"

namespace tamyiz {

struct FriendVote {
    std::size_t n_friends = 0;           // distinct friend names considered
    std::size_t n_predicted_female = 0;
    double ratio = 0.0;                  // n_predicted_female / n_friends
    enum class Decision { Male, Female, Abstain } decision = Decision::Abstain;
};

inline constexpr double kFriendVoteThreshold = 1.0 / 3.0;

// Duplicate names are collapsed before voting. Abstains iff there are no
// friends; otherwise Female iff ratio >= threshold (boundary inclusive).
FriendVote friend_vote(const std::vector<std::string>& friend_names, const GenderModel& model,
                       double threshold = kFriendVoteThreshold);

inline constexpr double kDefaultConfidenceTau = 0.8;

// Classifier on the username first; a Male call with p_male >= tau stands.
// Anything else goes to the friend vote, whose abstention falls back to
// the classifier's own label. Never returns Unknown.
GenderLabel combined_predict(const UserProfile& user, const GenderModel& model,
                             double tau = kDefaultConfidenceTau,
                             double vote_threshold = kFriendVoteThreshold);

}  // namespace tamyiz
