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

package shop;

import java.util.ArrayList;
import java.util.List;

public class Book extends Product {
    private String isbn;
    private Price price;

    public Book(String name, Price price) {
        super();
        this.name = name;
        this.price = price;
    }

    public double discount(Campaign campaign) {
        double base = price.amount;
        double cut = price.amount * campaign.getRate();
        return base - cut;
    }

    /**
     * Shelf label for the book.
     */
    public String title() {
        return "Book: " + name;
    }

    public List<String> tags() {
        List<String> out = new ArrayList<>();
        out.add(isbn);
        return out;
    }
}
