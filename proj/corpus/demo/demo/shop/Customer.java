// Copyright 2026 The smellgen Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

package demo.shop;

public class Customer {
    String name;
    String street;
    String city;
    String zip;
    String email;
    String phone;
    int loyaltyPoints;

    public Customer(String name) {
        this.name = name;
    }

    public String mailingLabel() {
        StringBuilder sb = new StringBuilder();
        sb.append(name).append('\n');
        sb.append(street).append('\n');
        sb.append(zip).append(' ').append(city).append('\n');
        sb.append(email).append(" / ").append(phone);
        return sb.toString();
    }

    public boolean isLoyal() {
        return loyaltyPoints > 100;
    }

    public void reward(int points) {
        if (points <= 0) {
            return;
        }
        loyaltyPoints += points;
    }
}
