/**
 * Content packs tuned for scripted end-to-end runs.
 *
 * campaignPack: zero-cost always-playable hacks with tiny gains, so a
 * full ten-week run never wins early, never goes bankrupt, and always
 * offers exactly three playable cards a week.
 *
 * privacyPack: a solution-heavy circuit whose card labels are
 * distinctive strings, so any hidden-card leakage into another seat's
 * response or rendered screen is detectable by substring.
 */

export const campaignPack = {
  schema_version: 1,
  game: 'game_of_growth',
  metadata: { name: 'Scripted Classroom Demo', version: '1.0.0' },
  game_of_growth: {
    hack_deck: ['one', 'two', 'three', 'four', 'five', 'six'].map((n) => ({
      label: `Drill ${n}`,
      cost: 0,
      success_threshold: 2,
      follower_gain: 1,
    })),
    event_deck: [
      { label: 'Quiet week', hack_cost_multiplier: 0.5 },
      { label: 'Buzz cycle', follower_gain_multiplier: 2 },
      { label: 'Hiring freeze', hiring_cost_multiplier: 2 },
      { label: 'Goodwill wave', salaries_waived: true },
    ],
    employee_deck: [
      {
        label: 'Flyer folder',
        hire_cost: 10,
        salary: 10,
        ability: { kind: 'passive_followers', amount: 1 },
      },
      {
        label: 'Coupon clipper',
        hire_cost: 10,
        salary: 10,
        ability: { kind: 'hack_discount', amount: 10 },
      },
      {
        label: 'Lucky charm',
        hire_cost: 10,
        salary: 10,
        ability: { kind: 'reroll_once_per_turn' },
      },
    ],
    startup_types: { tech: {}, service: {}, entertainment: {} },
  },
};

const categories = [
  'search_engine_optimization',
  'email_marketing',
  'social_media_marketing',
  'public_relations',
  'product_development',
  'display_advertising',
  'content_marketing',
  'search_engine_marketing',
];

function skillSpace(category: string): Record<string, unknown> {
  return { kind: 'skill', category, level: 1, study_cost: 100, follower_reward: 120 };
}

const secretWords = [
  'alpha',
  'bravo',
  'charlie',
  'delta',
  'echo',
  'foxtrot',
  'golf',
  'hotel',
  'india',
  'juliet',
];

export const privacyPack = {
  schema_version: 1,
  game: 'growthopoly',
  metadata: { name: 'Privacy Audit Circuit', version: '1.0.0' },
  growthopoly: {
    starting_money: 500,
    starting_followers: 0,
    start_reward: { money: 100, followers: 50 },
    slush: { success_threshold: 4, follower_reward: 100 },
    board: [
      { kind: 'start' },
      skillSpace(categories[0]!),
      { kind: 'prob_solve' },
      skillSpace(categories[1]!),
      { kind: 'prob_solve' },
      { kind: 'bonus' },
      skillSpace(categories[2]!),
      { kind: 'prob_solve' },
      { kind: 'slush' },
      skillSpace(categories[3]!),
      { kind: 'prob_solve' },
      skillSpace(categories[4]!),
      { kind: 'trade_fair', price: 100, followers_granted: 80 },
      { kind: 'prob_solve' },
      skillSpace(categories[5]!),
      { kind: 'prob_solve' },
      skillSpace(categories[6]!),
      skillSpace(categories[7]!),
    ],
    bonus_deck: [
      { label: 'Press shoutout', follower_delta: 60 },
      { label: 'Affiliate payout', money_delta: 80 },
    ],
    prob_solve_deck: [
      { kind: 'problem', label: 'Audit panic', tag: 'audit', money_penalty: 40 },
      { kind: 'problem', label: 'Rumor mill', tag: 'rumor', follower_penalty: 30 },
      ...secretWords.map((word, i) => ({
        kind: 'solution',
        label: `Secret playbook ${word}`,
        counters_tags: [i % 2 === 0 ? 'audit' : 'rumor'],
      })),
    ],
  },
};

export const privacySolutionLabels = secretWords.map((word) => `Secret playbook ${word}`);
