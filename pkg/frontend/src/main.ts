// Entry point. Routes:
//   #/leaderboard        live standings (default)
//   #/judge/<judge-id>   rating workflow for that judge token

import { ChallengeApi } from "./api.js";
import { JudgeScreen } from "./rating.js";
import { LeaderboardScreen } from "./leaderboard.js";

export function parseRoute(hash: string): { view: "leaderboard" } | { view: "judge"; judgeId: string } {
  const match = /^#\/judge\/(.+)$/.exec(hash);
  if (match) {
    return { view: "judge", judgeId: decodeURIComponent(match[1]) };
  }
  return { view: "leaderboard" };
}

function mount(): void {
  const root = document.getElementById("app");
  if (!root) return;
  const api = new ChallengeApi("");
  let leaderboard: LeaderboardScreen | null = null;

  const render = () => {
    leaderboard?.stop();
    leaderboard = null;
    const route = parseRoute(window.location.hash);
    if (route.view === "judge") {
      void new JudgeScreen(root, api, route.judgeId).load();
    } else {
      leaderboard = new LeaderboardScreen(root, api);
      leaderboard.start();
    }
  };

  window.addEventListener("hashchange", render);
  render();
}

if (typeof document !== "undefined" && document.getElementById("app")) {
  mount();
}
