// Typed client for the challenge service HTTP+JSON API.

export interface LeaderboardEntry {
  team: string;
  submission_id: string;
  gapelmaper: number;
  received_at: string;
}

export interface Assignment {
  assignment_id: string;
  submission_id: string;
  text: string;
  reference_text: string | null;
}

export interface RatingRecord {
  id: string;
  assignment_id: string;
  submission_id: string;
  judge_id: string;
  relevance: number;
  consistency: number;
  fluency: number;
  coherence: number;
  submitted_at: string;
}

export interface HumanScore {
  submission_id: string;
  relevance_mean: number;
  consistency_mean: number;
  fluency_mean: number;
  coherence_mean: number;
  n_judges: number;
  complete: boolean;
}

export interface RatingPayload {
  assignment_id: string;
  relevance: number;
  consistency: number;
  fluency: number;
  coherence: number;
}

/** A 4xx/5xx from the service; `code` is the service's error string. */
export class ApiError extends Error {
  constructor(
    public readonly code: string,
    message: string,
    public readonly status: number,
  ) {
    super(message);
    this.name = "ApiError";
  }
}

async function request<T>(url: string, init?: RequestInit): Promise<T> {
  const response = await fetch(url, init);
  const body = await response.json().catch(() => null);
  if (!response.ok) {
    const code = body?.error ?? `HTTP${response.status}`;
    const message = body?.message ?? response.statusText;
    throw new ApiError(code, message, response.status);
  }
  return body as T;
}

export class ChallengeApi {
  constructor(private readonly baseUrl: string = "") {}

  phase(): Promise<{ phase: string }> {
    return request(`${this.baseUrl}/api/phase`);
  }

  leaderboard(): Promise<LeaderboardEntry[]> {
    return request(`${this.baseUrl}/api/leaderboard`);
  }

  nextAssignment(judgeId: string): Promise<Assignment> {
    const query = new URLSearchParams({ judge: judgeId });
    return request(`${this.baseUrl}/api/assignments/next?${query}`);
  }

  submitRating(payload: RatingPayload): Promise<RatingRecord> {
    return request(`${this.baseUrl}/api/ratings`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(payload),
    });
  }

  humanScores(submissionId: string): Promise<HumanScore> {
    return request(`${this.baseUrl}/api/submissions/${submissionId}/human`);
  }
}
