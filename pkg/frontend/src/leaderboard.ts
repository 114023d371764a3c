// Live leaderboard: poll the service and render rows exactly in the
// order it returned them (this view never sorts or recomputes scores).

import { ChallengeApi, LeaderboardEntry } from "./api.js";
import { formatMetric, formatTimestamp } from "./format.js";

export const POLL_INTERVAL_MS = 30_000;

export function renderLeaderboard(root: HTMLElement, entries: LeaderboardEntry[]): void {
  root.textContent = "";
  if (entries.length === 0) {
    const empty = document.createElement("p");
    empty.className = "empty";
    empty.textContent = "No submissions yet.";
    root.append(empty);
    return;
  }
  const table = document.createElement("table");
  table.className = "leaderboard-table";
  const head = table.createTHead().insertRow();
  for (const title of ["#", "Team", "GAPELMAPER", "Submitted"]) {
    const cell = document.createElement("th");
    cell.textContent = title;
    head.append(cell);
  }
  const body = table.createTBody();
  entries.forEach((entry, index) => {
    const row = body.insertRow();
    row.insertCell().textContent = String(index + 1);
    row.insertCell().textContent = entry.team;
    row.insertCell().textContent = formatMetric(entry.gapelmaper);
    row.insertCell().textContent = formatTimestamp(entry.received_at);
  });
  root.append(table);
}

export class LeaderboardScreen {
  private timer: ReturnType<typeof setInterval> | null = null;
  private banner: HTMLElement;
  private tableRoot: HTMLElement;

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ChallengeApi,
    private readonly pollIntervalMs: number = POLL_INTERVAL_MS,
  ) {
    this.root.textContent = "";
    this.banner = document.createElement("p");
    this.banner.className = "stale-banner";
    this.banner.hidden = true;
    this.banner.textContent = "Could not refresh; showing the last loaded standings.";
    this.tableRoot = document.createElement("div");
    this.tableRoot.className = "leaderboard";
    this.root.append(this.banner, this.tableRoot);
  }

  async refresh(): Promise<void> {
    try {
      const entries = await this.api.leaderboard();
      renderLeaderboard(this.tableRoot, entries);
      this.banner.hidden = true;
    } catch {
      this.banner.hidden = false;
    }
  }

  start(): void {
    void this.refresh();
    this.timer = setInterval(() => void this.refresh(), this.pollIntervalMs);
  }

  stop(): void {
    if (this.timer !== null) {
      clearInterval(this.timer);
      this.timer = null;
    }
  }
}
