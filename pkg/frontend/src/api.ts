// Thin typed client for the solver service. All game logic lives server
// side; this module only moves JSON.

export interface HistoryRow {
  guess: string;
  bulls: number;
  cows: number;
}

export interface SessionState {
  id: string;
  policy: string;
  status: 'active' | 'solved' | 'contradicted';
  turn: number;
  remaining: number;
  suggestion: string | null;
  explanation?: string;
  history?: HistoryRow[];
}

export interface WhatIfResult {
  guess: string;
  counts: number[];
  probabilities: number[];
  score: number;
}

export class ApiError extends Error {
  constructor(message: string, readonly status: number) {
    super(message);
  }
}

async function request<T>(path: string, init?: RequestInit): Promise<T> {
  const res = await fetch(path, {
    headers: { 'Content-Type': 'application/json' },
    ...init,
  });
  if (!res.ok) {
    let detail = res.statusText;
    try {
      const body = await res.json();
      if (typeof body.detail === 'string') detail = body.detail;
    } catch {
      // non-JSON error body, keep the status text
    }
    throw new ApiError(detail, res.status);
  }
  if (res.status === 204) return undefined as T;
  return res.json();
}

export function createSession(policy: string): Promise<SessionState> {
  return request('/api/sessions', {
    method: 'POST',
    body: JSON.stringify({ policy }),
  });
}

export function getSession(id: string): Promise<SessionState> {
  return request(`/api/sessions/${id}`);
}

export function sendFeedback(id: string, bulls: number, cows: number): Promise<SessionState> {
  return request(`/api/sessions/${id}/feedback`, {
    method: 'POST',
    body: JSON.stringify({ bulls, cows }),
  });
}

export function undo(id: string): Promise<SessionState> {
  return request(`/api/sessions/${id}/undo`, { method: 'POST' });
}

export function whatIf(id: string, guess: string): Promise<WhatIfResult> {
  return request(`/api/sessions/${id}/what-if`, {
    method: 'POST',
    body: JSON.stringify({ guess }),
  });
}

export function deleteSession(id: string): Promise<void> {
  return request(`/api/sessions/${id}`, { method: 'DELETE' });
}
