#include "psmine/metrics.hpp"

namespace psmine {

namespace {

// Common standard Slack shortcodes; mirrors core/data/standard_emoji.txt.
// Anything not listed here counts as workspace-custom unless the caller
// supplies an explicit custom set.
constexpr const char* kStandardEmoji[] = {
    "+1", "-1", "100", "alarm_clock", "alien", "anchor", "angry", "apple",
    "arrow_down", "arrow_left", "arrow_right", "arrow_up", "arrows_counterclockwise",
    "art", "baby_chick", "balloon", "ballot_box_with_check", "banana", "bar_chart",
    "baseball", "basketball", "battery", "bear", "beer", "beers", "bell", "bike",
    "birthday", "black_heart", "blue_heart", "blush", "boar", "boat", "book",
    "bookmark", "books", "boom", "bow", "bowtie", "brain", "bread", "briefcase",
    "broken_heart", "bug", "bulb", "burrito", "bus", "cactus", "cake", "calendar",
    "call_me_hand", "camera", "car", "cat", "champagne", "chart_with_downwards_trend",
    "chart_with_upwards_trend", "checkered_flag", "cheese_wedge", "cherries",
    "chicken", "chocolate_bar", "clap", "clipboard", "clock", "cloud", "clown_face",
    "coffee", "cold_sweat", "computer", "confetti_ball", "confused", "construction",
    "cookie", "cool", "cow", "credit_card", "crescent_moon", "crossed_fingers",
    "crown", "cry", "crying_cat_face", "cupid", "curly_loop", "dancer", "dancers",
    "dart", "dash", "date", "deciduous_tree", "disappointed", "dizzy", "dizzy_face",
    "dog", "dollar", "doughnut", "droplet", "drum_with_drumsticks", "duck", "ear",
    "earth_africa", "earth_americas", "earth_asia", "egg", "eggplant", "eight",
    "electric_plug", "email", "envelope", "exclamation", "expressionless", "eye",
    "eyeglasses", "eyes", "face_with_rolling_eyes", "facepunch", "fearful", "fire",
    "fireworks", "first_quarter_moon", "fish", "fist", "five", "flushed",
    "football", "fork_and_knife", "four", "fries", "frog", "frowning",
    "full_moon", "gear", "gem", "ghost", "gift", "globe_with_meridians", "goat",
    "grapes", "green_heart", "grey_question", "grimacing", "grin", "grinning",
    "guitar", "hamburger", "hammer", "hammer_and_wrench", "handshake", "hankey",
    "hatched_chick", "hatching_chick", "headphones", "hear_no_evil", "heart",
    "heart_eyes", "heart_eyes_cat", "heartbeat", "heartpulse", "heavy_check_mark",
    "heavy_exclamation_mark", "heavy_minus_sign", "heavy_multiplication_x",
    "heavy_plus_sign", "helicopter", "herb", "hibiscus", "high_brightness",
    "hourglass", "house", "hugging_face", "hushed", "ice_cream", "icecream",
    "inbox_tray", "innocent", "iphone", "jack_o_lantern", "joy", "joy_cat", "key",
    "keyboard", "kiss", "kissing_heart", "knife", "laughing", "leaves", "lemon",
    "light_rail", "link", "lips", "lipstick", "lock", "lollipop", "loud_sound",
    "loudspeaker", "love_letter", "low_brightness", "mag", "mailbox", "mask",
    "medal", "mega", "memo", "metal", "microphone", "milky_way", "money_mouth_face",
    "money_with_wings", "moneybag", "monkey", "monkey_face", "mortar_board",
    "mount_fuji", "mouse", "movie_camera", "muscle", "mushroom", "musical_note",
    "nerd_face", "neutral_face", "new_moon", "night_with_stars", "no_bell",
    "no_entry", "no_entry_sign", "no_mouth", "nut_and_bolt", "ocean", "octopus",
    "ok", "ok_hand", "older_man", "older_woman", "one", "open_hands", "open_mouth",
    "orange_heart", "outbox_tray", "owl", "package", "page_facing_up", "palm_tree",
    "panda_face", "paperclip", "partly_sunny", "party_popper", "peach", "pencil2",
    "penguin", "pensive", "persevere", "phone", "pig", "pill", "pineapple",
    "pizza", "point_down", "point_left", "point_right", "point_up", "point_up_2",
    "popcorn", "pouting_cat", "pray", "pretzel", "purple_heart", "pushpin",
    "question", "rabbit", "radio", "rage", "rainbow", "raised_hand",
    "raised_hands", "raising_hand", "ramen", "recycle", "red_circle", "relaxed",
    "relieved", "repeat", "revolving_hearts", "ribbon", "rice", "ring", "robot_face",
    "rocket", "rofl", "rolling_on_the_floor_laughing", "rose", "round_pushpin",
    "runner", "sandwich", "satellite", "saxophone", "scissors", "scream",
    "scream_cat", "seedling", "see_no_evil", "seven", "shaking_hands", "shark",
    "sheep", "shell", "ship", "shirt", "shopping_trolley", "shrug", "shushing_face",
    "six", "skull", "sleeping", "sleepy", "slightly_frowning_face",
    "slightly_smiling_face", "smile", "smile_cat", "smiley", "smiley_cat",
    "smiling_imp", "smirk", "snail", "snake", "snowflake", "snowman", "sob",
    "soccer", "sparkler", "sparkles", "sparkling_heart", "speak_no_evil",
    "speaker", "speech_balloon", "spider", "star", "star-struck", "star2",
    "stars", "stew", "stopwatch", "strawberry", "stuck_out_tongue",
    "stuck_out_tongue_closed_eyes", "stuck_out_tongue_winking_eye", "sun_with_face",
    "sunflower", "sunglasses", "sunny", "sunrise", "sushi", "sweat", "sweat_drops",
    "sweat_smile", "swimmer", "syringe", "taco", "tada", "tangerine", "tea",
    "telephone", "telescope", "tennis", "thinking_face", "thought_balloon", "three",
    "thumbsdown", "thumbsup", "ticket", "tiger", "toilet", "tomato", "tongue",
    "tophat", "tornado", "trackball", "tractor", "traffic_light", "train", "tram",
    "triangular_flag_on_post", "trident", "triumph", "trophy", "truck", "trumpet",
    "turtle", "tv", "two", "two_hearts", "umbrella", "unamused", "unicorn_face",
    "unlock", "upside_down_face", "v", "video_camera", "violin", "volcano",
    "walking", "waning_crescent_moon", "warning", "watch", "water_buffalo",
    "watermelon", "wave", "waving_black_flag", "waving_white_flag", "wavy_dash",
    "waxing_crescent_moon", "wedding", "whale", "wheelchair", "white_check_mark",
    "white_circle", "white_flower", "white_heart", "white_square_button", "wind_chime",
    "wine_glass", "wink", "wolf", "woman", "world_map", "worried", "wrench",
    "writing_hand", "x", "yellow_heart", "yum", "zap", "zero", "zipper_mouth_face",
    "zzz",
};

}  // namespace

const std::set<std::string>& standard_emoji_names() {
    static const std::set<std::string> names = [] {
        std::set<std::string> s;
        for (const char* name : kStandardEmoji) s.insert(name);
        return s;
    }();
    return names;
}

}  // namespace psmine
